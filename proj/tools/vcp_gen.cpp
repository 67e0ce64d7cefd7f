// Writes synthetic graphs as SNAP-style edge lists.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "vcp/generators.hpp"

int main(int argc, char** argv) {
  std::string kind = "power-law";
  std::string out;
  std::uint32_t n = 100000;
  std::uint64_t m = 0;
  double alpha = 2.1;
  std::uint32_t min_degree = 4;
  std::uint64_t seed = 1;

  CLI::App app{"Generate an edge-list graph"};
  app.add_option("--kind", kind, "power-law | erdos-renyi | path | star | cycle")
      ->check(CLI::IsMember({"power-law", "erdos-renyi", "path", "star", "cycle"}))
      ->capture_default_str();
  app.add_option("--vertices,-n", n, "vertex count")->capture_default_str();
  app.add_option("--edges,-m", m, "edge count (erdos-renyi)");
  app.add_option("--alpha", alpha, "power-law exponent")->capture_default_str();
  app.add_option("--min-degree", min_degree, "power-law minimum degree")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--output,-o", out, "output file (stdout if omitted)");
  CLI11_PARSE(app, argc, argv);

  vcp::Graph g;
  try {
    if (kind == "power-law") g = vcp::gen::power_law(n, alpha, seed, min_degree, false);
    else if (kind == "erdos-renyi") g = vcp::gen::erdos_renyi(n, m ? m : 4ull * n, seed, false);
    else if (kind == "path") g = vcp::gen::path(n, false);
    else if (kind == "star") g = vcp::gen::star(n ? n - 1 : 0, false);
    else g = vcp::gen::cycle(n, false);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::FILE* f = out.empty() ? stdout : std::fopen(out.c_str(), "w");
  if (!f) {
    std::cerr << "cannot open " << out << '\n';
    return 1;
  }
  std::fprintf(f, "# %s graph, %u vertices, %llu edges, seed %llu\n", kind.c_str(), g.vertex_count(),
               static_cast<unsigned long long>(g.edge_count()), static_cast<unsigned long long>(seed));
  for (vcp::VertexId u = 0; u < g.vertex_count(); ++u)
    for (vcp::VertexId v : g.out_neighbors(u)) std::fprintf(f, "%u\t%u\n", u, v);
  if (f != stdout) std::fclose(f);
  return 0;
}
