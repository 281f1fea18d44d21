#pragma once

// Reference values computed by path enumeration on small explicit graphs.
// They use only carrier arithmetic, never the evaluator.

#include <functional>
#include <optional>
#include <vector>

#include "fixprov/semiring.hpp"

namespace oracle {

using fixprov::Semiring;
using fixprov::Value;

// w[a][b] is the edge weight, nullopt for no edge.
using Weights = std::vector<std::vector<std::optional<Value>>>;

// Calls visit(edges) for every simple path from s to t (the empty path when
// s == t), where edges lists (a, b) steps.
inline void simple_paths(const Weights& w, std::size_t s, std::size_t t,
                         const std::function<void(const std::vector<std::pair<std::size_t, std::size_t>>&)>& visit) {
  std::vector<bool> on(w.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> path;
  std::function<void(std::size_t)> go = [&](std::size_t a) {
    if (a == t) {
      visit(path);
      return;
    }
    on[a] = true;
    for (std::size_t b = 0; b < w.size(); ++b) {
      if (!w[a][b] || on[b]) continue;
      path.emplace_back(a, b);
      go(b);
      path.pop_back();
    }
    on[a] = false;
  };
  go(s);
}

// Simple cycles through c, each as its list of edges.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> simple_cycles(const Weights& w, std::size_t c) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  for (std::size_t b = 0; b < w.size(); ++b) {
    if (!w[c][b]) continue;
    if (b == c) {
      out.push_back({{c, c}});
      continue;
    }
    simple_paths(w, b, c, [&](const auto& rest) {
      for (const auto& e : rest) {
        if (e.first == c) return;  // would pass through c twice
      }
      std::vector<std::pair<std::size_t, std::size_t>> cyc{{c, b}};
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      out.push_back(std::move(cyc));
    });
  }
  return out;
}

inline Value product_of(const Semiring& k, const Weights& w, const std::vector<std::pair<std::size_t, std::size_t>>& es) {
  Value acc = k.one();
  for (auto [a, b] : es) acc = k.mul(acc, *w[a][b]);
  return acc;
}

// Σ over simple paths s -> t of the product of their edges: the least
// fixed point of reachability in an absorptive carrier.
inline Value reachability(const Semiring& k, const Weights& w, std::size_t s, std::size_t t) {
  Value acc = k.zero();
  simple_paths(w, s, t, [&](const auto& es) { acc = k.add(acc, product_of(k, w, es)); });
  return acc;
}

// Σ over lassos (simple path s -> c, then a simple cycle through c forever)
// of prefix · cycle^∞: the value of "there is an infinite path from s" in an
// absorptive, fully continuous carrier.
inline Value infinite_paths(const Semiring& k, const Weights& w, std::size_t s) {
  Value acc = k.zero();
  for (std::size_t c = 0; c < w.size(); ++c) {
    auto cycles = simple_cycles(w, c);
    if (cycles.empty()) continue;
    simple_paths(w, s, c, [&](const auto& prefix) {
      Value p = product_of(k, w, prefix);
      for (const auto& cyc : cycles) acc = k.add(acc, k.mul(p, k.infinitary_power(product_of(k, w, cyc))));
    });
  }
  return acc;
}

}  // namespace oracle
