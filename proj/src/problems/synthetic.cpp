#include "hcevo/problems/synthetic.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>
#include <vector>

#include "hcevo/problems/registry.hpp"

namespace hcevo::problems {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

std::string datacenter_text(Rng& rng) {
  const auto rows = rng.between(1, 4), slots = rng.between(2, 10), pools = rng.between(1, 3);
  std::vector<std::pair<std::int64_t, std::int64_t>> blocked;
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t s = 0; s < slots; ++s) {
      if (rng.chance(0.15)) blocked.emplace_back(r, s);
    }
  }
  const auto servers = rng.between(1, 16);
  std::string t = str(rows) + " " + str(slots) + " " + str(static_cast<std::int64_t>(blocked.size())) + " " +
                  str(pools) + " " + str(servers) + "\n";
  for (auto [r, s] : blocked) t += str(r) + " " + str(s) + "\n";
  for (std::int64_t i = 0; i < servers; ++i) t += str(rng.between(1, 4)) + " " + str(rng.between(1, 30)) + "\n";
  return t;
}

std::string rides_text(Rng& rng) {
  const auto rows = rng.between(2, 20), cols = rng.between(2, 20), fleet = rng.between(1, 4);
  const auto n = rng.between(1, 20), bonus = rng.between(0, 10), total = rng.between(10, 80);
  std::string t = str(rows) + " " + str(cols) + " " + str(fleet) + " " + str(n) + " " + str(bonus) + " " +
                  str(total) + "\n";
  for (std::int64_t i = 0; i < n; ++i) {
    const auto s = rng.between(0, total - 1);
    const auto f = rng.between(s + 1, total);
    t += str(rng.between(0, rows - 1)) + " " + str(rng.between(0, cols - 1)) + " " +
         str(rng.between(0, rows - 1)) + " " + str(rng.between(0, cols - 1)) + " " + str(s) + " " + str(f) + "\n";
  }
  return t;
}

std::string traffic_text(Rng& rng) {
  const auto nodes = rng.between(2, 6), n_cars = rng.between(1, 12), deadline = rng.between(5, 40);
  const auto n_streets = rng.between(nodes, 3 * nodes);
  std::vector<std::array<std::int64_t, 3>> streets;
  // A ring first so every route can take a second step.
  for (std::int64_t s = 0; s < nodes; ++s) streets.push_back({s, (s + 1) % nodes, rng.between(1, 4)});
  for (std::int64_t s = nodes; s < n_streets; ++s) {
    const auto b = rng.between(0, nodes - 1);
    auto e = rng.between(0, nodes - 2);
    if (e >= b) ++e;
    streets.push_back({b, e, rng.between(1, 4)});
  }
  std::string t = str(deadline) + " " + str(nodes) + " " + str(n_streets) + " " + str(n_cars) + " " +
                  str(rng.between(0, 100)) + "\n";
  for (std::size_t s = 0; s < streets.size(); ++s) {
    t += str(streets[s][0]) + " " + str(streets[s][1]) + " s" + std::to_string(s) + " " + str(streets[s][2]) + "\n";
  }
  for (std::int64_t c = 0; c < n_cars; ++c) {
    std::vector<std::size_t> route{static_cast<std::size_t>(rng.between(0, n_streets - 1))};
    const auto hops = rng.between(1, 5);
    for (std::int64_t h = 0; h < hops; ++h) {
      std::vector<std::size_t> next;
      for (std::size_t s = 0; s < streets.size(); ++s) {
        if (streets[s][0] == streets[route.back()][1]) next.push_back(s);
      }
      route.push_back(next[rng.below(next.size())]);
    }
    t += std::to_string(route.size());
    for (auto s : route) t += " s" + std::to_string(s);
    t += "\n";
  }
  return t;
}

// Points inside a 20000-wide window keep the coarse grid around 10 x 10.
std::string fishing_text(Rng& rng) {
  const auto n = rng.between(5, 40);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  auto point = [&](std::int64_t cx, std::int64_t cy) {
    for (;;) {
      const auto x = std::clamp<std::int64_t>(cx + static_cast<std::int64_t>(rng.normal() * 3000.0), 0, 20000);
      const auto y = std::clamp<std::int64_t>(cy + static_cast<std::int64_t>(rng.normal() * 3000.0), 0, 20000);
      if (seen.emplace(x, y).second) return str(x) + " " + str(y) + "\n";
    }
  };
  std::string t = str(n) + "\n";
  const auto mx = rng.between(4000, 16000), my = rng.between(4000, 16000);
  for (std::int64_t i = 0; i < n; ++i) t += point(mx, my);
  const auto sx = rng.between(0, 20000), sy = rng.between(0, 20000);
  for (std::int64_t i = 0; i < n; ++i) t += point(sx, sy);
  return t;
}

std::string toy_text(Rng& rng) {
  const auto n = rng.between(1, 8);
  std::string t = str(n) + " " + std::to_string(rng.uniform(-10.0, 10.0)) + "\n";
  for (std::int64_t i = 0; i < n; ++i) t += std::to_string(rng.uniform(-5.0, 5.0)) + "\n";
  return t;
}

}  // namespace

std::string synthetic_instance(std::string_view problem, Rng& rng) {
  if (problem == "datacenter2015") return datacenter_text(rng);
  if (problem == "rides2018") return rides_text(rng);
  if (problem == "traffic2021") return traffic_text(rng);
  if (problem == "fishing_ahc039") return fishing_text(rng);
  if (problem == "toy") return toy_text(rng);
  throw NotFound(problem);
}

}  // namespace hcevo::problems
