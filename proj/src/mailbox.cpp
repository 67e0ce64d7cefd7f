#include <string>

#include "vcp/layout.hpp"
#include "vcp/mailbox.hpp"

namespace vcp {

std::string_view to_string(Combiner c) {
  switch (c) {
    case Combiner::Lock: return "lock";
    case Combiner::Cas: return "cas";
    case Combiner::Hybrid: return "hybrid";
  }
  return "?";
}

Combiner parse_combiner(std::string_view name) {
  if (name == "lock") return Combiner::Lock;
  if (name == "cas") return Combiner::Cas;
  if (name == "hybrid") return Combiner::Hybrid;
  throw ConfigError("unknown combiner '" + std::string(name) + "' (expected lock, cas or hybrid)");
}

std::string_view to_string(LayoutMode m) {
  switch (m) {
    case LayoutMode::Interleaved: return "interleaved";
    case LayoutMode::Externalised: return "external";
  }
  return "?";
}

LayoutMode parse_layout(std::string_view name) {
  if (name == "interleaved") return LayoutMode::Interleaved;
  if (name == "external") return LayoutMode::Externalised;
  throw ConfigError("unknown layout '" + std::string(name) + "' (expected interleaved or external)");
}

}  // namespace vcp
