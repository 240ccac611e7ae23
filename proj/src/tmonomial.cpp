#include "ncdr/tmonomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncdr {

TMonomial tmono(std::initializer_list<TVar> vars) {
  TMonomial m(vars);
  std::sort(m.begin(), m.end());
  return m;
}

TMonomial tmono_add(TMonomial m, TVar v, int times) {
  for (int i = 0; i < times; ++i) m.insert(std::upper_bound(m.begin(), m.end(), v), v);
  return m;
}

TMonomial tmono_remove(TMonomial m, TVar v) {
  auto it = std::lower_bound(m.begin(), m.end(), v);
  if (it == m.end() || *it != v) throw std::invalid_argument("tmono_remove: variable not present");
  m.erase(it);
  return m;
}

int mode_sum(const TMonomial& m) {
  int s = 0;
  for (const auto& v : m) s += v.a;
  return s;
}

int psi_weight(const TMonomial& m) {
  int s = 0;
  for (const auto& v : m) s += v.d;
  return s;
}

std::vector<std::pair<TVar, int>> multiplicities(const TMonomial& m) {
  std::vector<std::pair<TVar, int>> out;
  for (const auto& v : m) {
    if (!out.empty() && out.back().first == v) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

Integer multiplicity_factorial(const TMonomial& m) {
  Integer p = 1;
  for (const auto& [v, k] : multiplicities(m)) p *= factorial(k);
  return p;
}

nlohmann::json tmono_json(const TMonomial& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : m) out.push_back({v.a, v.d});
  return out;
}

void for_each_split(const TMonomial& m, int k,
                    const std::function<void(const std::vector<TMonomial>&, const Integer&)>& visit) {
  auto mult = multiplicities(m);
  std::vector<TMonomial> parts(k);
  std::function<void(std::size_t, Integer)> rec = [&](std::size_t idx, Integer weight) {
    if (idx == mult.size()) {
      visit(parts, weight);
      return;
    }
    const auto& [v, total] = mult[idx];
    // Distribute `total` copies of v over the k parts.
    std::vector<int> share(k, 0);
    std::function<void(int, int, Integer)> spread = [&](int part, int left, Integer w) {
      if (part == k - 1) {
        share[part] = left;
        w /= factorial(left);
        for (int i = 0; i < k; ++i) parts[i].insert(parts[i].end(), share[i], v);
        rec(idx + 1, weight * w);
        for (int i = 0; i < k; ++i) parts[i].resize(parts[i].size() - share[i]);
        return;
      }
      for (int c = 0; c <= left; ++c) {
        share[part] = c;
        spread(part + 1, left - c, w / factorial(c));
      }
    };
    spread(0, total, factorial(total));
  };
  if (k <= 0) {
    if (m.empty()) visit(parts, Integer(1));
    return;
  }
  rec(0, Integer(1));
}

void for_each_tmonomial(int count, int weight, int amax, const std::function<void(const TMonomial&)>& visit) {
  // Variables are chosen in nondecreasing (d, a) order, which bounds the
  // d-budget early; each result is re-sorted into TMonomial order.
  TMonomial cur, sorted;
  std::function<void(int, int, int, int)> rec = [&](int left, int wleft, int d0, int a0) {
    if (left == 0) {
      if (wleft != 0) return;
      sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      visit(sorted);
      return;
    }
    for (int d = d0; d * left <= wleft; ++d) {
      for (int a = (d == d0 ? a0 : -amax); a <= amax; ++a) {
        cur.push_back({a, d});
        rec(left - 1, wleft - d, d, a);
        cur.pop_back();
      }
    }
  };
  rec(count, weight, 0, -amax);
}

}  // namespace ncdr
