#include "ncdr/hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "ncdr/series.hpp"

namespace ncdr {

nlohmann::json ReconstructionBounds::to_json() const {
  return {{"epsOrder", eps_order}, {"nMax", n_max}, {"dMax", d_max}, {"Amax", Amax}};
}

Rational CCoefficientTable::derivative(const CKey& key) const {
  if (mode_sum(key.mono) != key.alpha || key.mu > key.k) return 0;
  auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("c-coefficient outside the reconstructed table");
  return it->second;
}

Rational CCoefficientTable::coefficient(const CKey& key) const {
  return derivative(key) / Rational(multiplicity_factorial(key.mono));
}

nlohmann::json CCoefficientTable::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [key, v] : values_) {
    if (sgn(v) == 0) continue;
    list.push_back({{"alpha", key.alpha},
                    {"k", key.k},
                    {"mu", key.mu},
                    {"monomial", tmono_json(key.mono)},
                    {"coefficient", to_string(v / Rational(multiplicity_factorial(key.mono)))}});
  }
  return {{"bounds", bounds_.to_json()},
          {"entryCount", values_.size()},
          {"nonzeroEntries", list},
          {"lookups", stats_.lookups},
          {"selfLookups", stats_.self_lookups},
          {"seedChecks", stats_.seed_checks}};
}

std::string CCoefficientTable::to_cache_text() const {
  std::ostringstream out;
  for (const auto& [key, v] : values_) {
    out << key.alpha << ';' << key.k << ';' << key.mu << ';';
    for (std::size_t i = 0; i < key.mono.size(); ++i) {
      if (i) out << ',';
      out << key.mono[i].a << ':' << key.mono[i].d;
    }
    out << ';' << to_string(v / Rational(multiplicity_factorial(key.mono))) << '\n';
  }
  return out.str();
}

CKey CCoefficientTable::parse_cache_key(const std::string& line, Rational* value) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ';')) fields.push_back(f);
  if (line.ends_with(';')) fields.emplace_back();
  if (fields.size() != 5) throw std::invalid_argument("c-coefficient cache line must have 5 fields");
  CKey key{std::stoi(fields[0]), {}, std::stoi(fields[1]), std::stoi(fields[2])};
  std::stringstream vars(fields[3]);
  while (std::getline(vars, f, ',')) {
    auto colon = f.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("malformed variable in cache line");
    key.mono.push_back({std::stoi(f.substr(0, colon)), std::stoi(f.substr(colon + 1))});
  }
  std::sort(key.mono.begin(), key.mono.end());
  if (value) *value = parse_rational(fields[4]);
  return key;
}

namespace {

using Order = std::tuple<int, int, int>;

Order order_of(int k, const TMonomial& m) { return {k, static_cast<int>(m.size()), psi_weight(m)}; }

class Reconstructor {
 public:
  Reconstructor(const FourierFlow& flow, const ReconstructionBounds& bounds, RecursionStats& stats)
      : flow_(flow), bounds_(bounds), stats_(stats) {}

  Rational value(const CKey& key) {
    if (key.k < 0 || key.mu < 0 || key.mu > key.k) return 0;
    if (mode_sum(key.mono) != key.alpha) return 0;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Rational v = solve(key);
    memo_.emplace(key, v);
    return v;
  }

 private:
  struct Context {
    const CKey* self;
    Rational self_value;
    Order order;
  };

  static Rational seed(const CKey& key) {
    if (key.k == 0 && key.mono.size() == 1 && key.mu == 0) {
      return (key.mono[0].a == key.alpha && key.mono[0].d == 0) ? Rational(1) : Rational(0);
    }
    return 0;
  }

  Rational solve(const CKey& key) {
    const int kn = key.k + static_cast<int>(key.mono.size());
    Context ctx{&key, 0, order_of(key.k, key.mono)};
    Rational r0 = rhs(key, ctx);
    ctx.self_value = 1;
    Rational lambda = rhs(key, ctx) - r0;
    if (kn <= 1) {
      Rational s = seed(key);
      ++stats_.seed_checks;
      if (Rational(kn) * s != r0 + lambda * s) {
        throw ContractError("special flow is inconsistent with the seed coefficient");
      }
      return s;
    }
    if (lambda == Rational(kn)) throw ContractError("recursion cannot isolate the coefficient");
    return r0 / (Rational(kn) - lambda);
  }

  // Coefficient of d^M at eps^k mu^mu in w^{sp;b} read through the lookup
  // discipline.
  Rational lookup(int b, const TMonomial& M, int k, int mu, Context& ctx) {
    if (mu > k || mode_sum(M) != b) return 0;
    ++stats_.lookups;
    CKey key{b, M, k, mu};
    if (key == *ctx.self) {
      ++stats_.self_lookups;
      return ctx.self_value;
    }
    if (!(order_of(k, M) < ctx.order)) {
      std::ostringstream msg;
      msg << "recursion read an entry of non-smaller multi-index: c[" << b << ";" << tmono_json(M).dump() << ";" << k << ";" << mu
          << "] while computing c[" << ctx.self->alpha << ";" << tmono_json(ctx.self->mono).dump() << ";" << ctx.self->k << ";"
          << ctx.self->mu << "]";
      throw ContractError(msg.str());
    }
    return value(key);
  }

  // d_x^p w^{sp;b} at x = 0: D^p w + delta_{p,1} A^b, D = sum t_{n+1} d/dt_n.
  Rational jet(int b, int p, const TMonomial& M, int k, int mu, Context& ctx) {
    if (p == 0) return lookup(b, M, k, mu, ctx);
    Rational s = 0;
    if (p == 1 && b == 0 && M.empty() && k == 0 && mu == 0) s += 1;
    for (const auto& [v, mult] : multiplicities(M)) {
      if (v.d == 0) continue;
      TMonomial lowered = tmono_add(tmono_remove(M, v), TVar{v.a, v.d - 1});
      s += mult * jet(b, p - 1, lowered, k, mu, ctx);
    }
    return s;
  }

  Rational rhs(const CKey& key, Context& ctx) {
    auto eq = flow_.equations.find(key.alpha);
    if (eq == flow_.equations.end()) throw ContractError("special flow has no equation for this mode");
    Rational total = 0;
    for (const auto& [mono, c] : eq->second) {
      const int de = key.k - mono.eps, dm = key.mu - mono.mu;
      if (de < 0 || dm < 0) continue;
      const int nf = static_cast<int>(mono.jets.size());
      for_each_split(key.mono, nf, [&](const std::vector<TMonomial>& parts, const Integer& weight) {
        for (int i = 0; i < nf; ++i) {
          if (mode_sum(parts[i]) != mono.jets[i].mode) return;
        }
        std::function<Rational(int, int, int)> rec = [&](int i, int e_left, int m_left) -> Rational {
          const auto& j = mono.jets[i];
          if (i == nf - 1) return jet(j.mode, j.dx, parts[i], e_left, m_left, ctx);
          Rational s = 0;
          for (int e = 0; e <= e_left; ++e) {
            for (int m = std::max(0, m_left - (e_left - e)); m <= std::min(e, m_left); ++m) {
              Rational f = jet(j.mode, j.dx, parts[i], e, m, ctx);
              if (sgn(f) != 0) s += f * rec(i + 1, e_left - e, m_left - m);
            }
          }
          return s;
        };
        if (dm <= de) total += c * Rational(weight) * rec(0, de, dm);
      });
    }
    return total;
  }

  const FourierFlow& flow_;
  const ReconstructionBounds& bounds_;
  RecursionStats& stats_;
  std::map<CKey, Rational> memo_;
};

}  // namespace

CCoefficientTable reconstruct_from_special_flow(const FourierFlow& special_flow, const ReconstructionBounds& bounds) {
  if (!special_flow.is_homogeneous()) throw ContractError("special flow is not homogeneous");
  for (const auto& [alpha, eq] : special_flow.equations) {
    for (const auto& [mono, c] : eq) {
      if (mono.mu > mono.eps) throw ContractError("special flow has a term with mu degree above its eps degree");
    }
  }
  if (special_flow.mode_bound < bounds.n_max * bounds.Amax) {
    throw std::invalid_argument("special flow mode bound must be at least n_max * Amax");
  }
  CCoefficientTable table;
  table.bounds_ = bounds;
  std::vector<CKey> keys;
  for (int k = 0; k <= bounds.eps_order; ++k) {
    for (int mu = 0; mu <= k; ++mu) {
      for (int n = 0; n <= bounds.n_max; ++n) {
        for (int w = 0; w <= bounds.d_max; ++w) {
          for_each_tmonomial(n, w, bounds.Amax, [&](const TMonomial& m) {
            int alpha = mode_sum(m);
            if (std::abs(alpha) <= bounds.Amax) keys.push_back({alpha, m, k, mu});
          });
        }
      }
    }
  }
  std::stable_sort(keys.begin(), keys.end(), [](const CKey& a, const CKey& b) {
    return order_of(a.k, a.mono) < order_of(b.k, b.mono);
  });
  Reconstructor rec(special_flow, bounds, table.stats_);
  for (const auto& key : keys) table.values_.emplace(key, rec.value(key));
  table.stats_.entries = table.values_.size();
  return table;
}

CheckReport verify_series_identities(int cutoff, int alpha_max) {
  if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
  CheckReport report{"identities", {}};
  const int C = cutoff + 2;  // working precision before comparison
  auto compare = [&](const std::string& name, nlohmann::json where, const SparsePoly& lhs, const SparsePoly& rhs) {
    for (int i = 0; i <= cutoff; ++i) {
      for (int j = 0; i + j <= cutoff; ++j) {
        nlohmann::json w = where;
        w["z1"] = i;
        w["z2"] = j;
        report.checks.push_back({name, w, bivariate::coefficient(lhs, i, j), bivariate::coefficient(rhs, i, j)});
      }
    }
  };
  const TruncatedSeries S = series_S(C), zeta = series_zetabar(C);
  const Rational half = make_rational(1, 2);

  // A~_{0,1;alpha,k} = [z1 z2^k] T_0(z1) T_alpha(z2) / T_alpha(z1+z2) * zeta(-alpha z1)/2.
  auto a_tilde_01 = [&](int alpha, int k) {
    SparsePoly t0 = bivariate::compose_linear(series_T(0, C), 1, 0, C);
    SparsePoly ta = bivariate::compose_linear(series_T(alpha, C), 0, 1, C);
    SparsePoly inv = bivariate::compose_linear(series_inv(series_T(alpha, C)), 1, 1, C);
    SparsePoly z = bivariate::compose_linear(zeta * half, Rational(-alpha), 0, C);
    SparsePoly A = bivariate::multiply(bivariate::multiply(t0, ta, C), bivariate::multiply(inv, z, C), C);
    return bivariate::coefficient(A, 1, k);
  };

  for (int a1 = -alpha_max; a1 <= alpha_max; ++a1) {
    for (int a2 = -alpha_max; a2 <= alpha_max; ++a2) {
      nlohmann::json where = {{"alpha1", a1}, {"alpha2", a2}};
      // (i) (1 + z1 d1 + z2 d2) S(a1 z2 - a2 z1) = zeta(a1 z2 - a2 z1)/2.
      SparsePoly s = bivariate::compose_linear(S, Rational(-a2), Rational(a1), C);
      SparsePoly zh = bivariate::compose_linear(zeta * half, Rational(-a2), Rational(a1), C);
      compare("euler-S", where, bivariate::euler_shift(s), zh);

      // (ii) the equation with A~, alpha = a1 + a2.
      int alpha = a1 + a2;
      SparsePoly invT = bivariate::compose_linear(series_inv(series_T(alpha, C)), 1, 1, C);
      SparsePoly lhs = bivariate::euler_shift(bivariate::multiply(s, invT, C));
      TruncatedSeries sum_h(C);
      for (int h = 1; 2 * h <= C; ++h) sum_h.coeff(2 * h) = a_tilde_01(alpha, 2 * h - 1);
      SparsePoly sum2 = bivariate::compose_linear(sum_h, 1, 1, C);
      SparsePoly rhs = bivariate::multiply(zh, invT, C) + bivariate::multiply(bivariate::multiply(s, invT, C), sum2, C);
      compare("A-tilde-equation", where, lhs, rhs);
    }
  }
  // (iii) z d/dz (1/T_alpha) = (1/T_alpha) sum_h A~_{0,1;alpha,2h-1} z^{2h}.
  for (int alpha = -alpha_max; alpha <= alpha_max; ++alpha) {
    TruncatedSeries inv = series_inv(series_T(alpha, C));
    TruncatedSeries zd(C);
    for (int k = 1; k <= C; ++k) zd.coeff(k) = Rational(k) * inv[k];
    TruncatedSeries sum_h(C);
    for (int h = 1; 2 * h <= C; ++h) sum_h.coeff(2 * h) = a_tilde_01(alpha, 2 * h - 1);
    TruncatedSeries rhs = inv * sum_h;
    for (int k = 0; k <= cutoff; ++k) {
      report.checks.push_back({"log-derivative", {{"alpha", alpha}, {"z", k}}, zd[k], rhs[k]});
    }
  }
  return report;
}

}  // namespace ncdr
