#include "ncdr/fourier.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace ncdr {

int ModeMonomial::mode_weight() const {
  int w = 0;
  for (const auto& j : jets) w += j.mode;
  return w;
}

int ModeMonomial::x_degree() const {
  int d = 0;
  for (const auto& j : jets) d += j.dx;
  return d;
}

void add_mode_term(ModePoly& p, ModeMonomial m, const Rational& c) {
  if (sgn(c) == 0) return;
  std::sort(m.jets.begin(), m.jets.end());
  auto [it, inserted] = p.emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

bool FourierFlow::is_homogeneous() const {
  for (const auto& [a, eq] : equations) {
    for (const auto& [m, c] : eq) {
      if (m.mode_weight() != a) return false;
    }
  }
  return true;
}

nlohmann::json mode_poly_json(const ModePoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : p) {
    nlohmann::json jets = nlohmann::json::array();
    for (const auto& j : m.jets) jets.push_back({{"mode", j.mode}, {"dx", j.dx}});
    out.push_back({{"coeff", to_string(c)}, {"eps", m.eps}, {"mu", m.mu}, {"jets", jets}});
  }
  return out;
}

nlohmann::json FourierFlow::to_json() const {
  nlohmann::json eqs = nlohmann::json::object();
  for (const auto& [a, eq] : equations) eqs[std::to_string(a)] = mode_poly_json(eq);
  return {{"modeBound", mode_bound}, {"equations", eqs}};
}

FourierFlow to_fourier(const DiffPoly2& rhs, int amax) {
  if (amax < 0) throw std::invalid_argument("mode bound must be >= 0");
  std::map<int, std::map<ModeMonomial, GaussianRational>> acc;
  std::vector<int> modes;
  for (const auto& [m, c] : rhs.terms()) {
    std::size_t k = m.jets.size();
    modes.assign(k, -amax);
    while (true) {
      int total = 0;
      for (int b : modes) total += b;
      if (std::abs(total) <= amax) {
        GaussianRational coeff = c;
        ModeMonomial mm{m.eps, m.mu, {}};
        bool zero = false;
        for (std::size_t j = 0; j < k; ++j) {
          int ky = m.jets[j].y;
          if (ky > 0 && modes[j] == 0) {
            zero = true;
            break;
          }
          coeff *= GaussianRational(power(Rational(modes[j]), ky)) * i_power(ky);
          mm.jets.push_back({modes[j], m.jets[j].x});
        }
        if (!zero) {
          std::sort(mm.jets.begin(), mm.jets.end());
          auto& slot = acc[total][mm];
          slot += coeff;
        }
      }
      std::size_t p = 0;
      while (p < k && modes[p] == amax) modes[p++] = -amax;
      if (p == k) break;
      ++modes[p];
    }
  }
  FourierFlow out;
  out.mode_bound = amax;
  for (int a = -amax; a <= amax; ++a) out.equations[a];
  for (auto& [a, eq] : acc) {
    for (auto& [m, c] : eq) {
      if (sgn(c.im()) != 0) throw std::logic_error("Fourier form has a residual imaginary part");
      if (sgn(c.re()) != 0) out.equations[a].emplace(m, c.re());
    }
  }
  return out;
}

}  // namespace ncdr
