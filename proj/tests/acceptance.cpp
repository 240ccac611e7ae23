#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ncdr/diffpoly.hpp"
#include "ncdr/hierarchy.hpp"
#include "ncdr/pdo.hpp"
#include "ncdr/pixton.hpp"
#include "ncdr/potential.hpp"
#include "ncdr/psi.hpp"
#include "ncdr/stable_graph.hpp"
#include "oracles.hpp"

using namespace ncdr;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      detail << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.pass) ++failures;
  std::printf("%s %2d %s (%.1fs) %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), secs, out.detail.str().c_str());
  std::fflush(stdout);
}

std::string count(const char* label, std::size_t v) { return std::string(label) + "=" + std::to_string(v) + " "; }

DiffPoly2 random_poly(std::mt19937& rng, Truncation t, int max_terms = 3) {
  std::uniform_int_distribution<int> small(0, 2), coeff(-3, 3), terms(1, max_terms), njets(0, 2);
  DiffPoly2 out(t);
  int n = terms(rng);
  for (int k = 0; k < n; ++k) {
    DMonomial m{small(rng) % 2, small(rng) % 2, {}};
    int j = njets(rng);
    for (int s = 0; s < j; ++s) {
      m.jets.push_back(Jet{static_cast<std::uint8_t>(small(rng)), static_cast<std::uint8_t>(small(rng))});
    }
    std::sort(m.jets.begin(), m.jets.end());
    GaussianRational c(make_rational(coeff(rng)), make_rational(coeff(rng)));
    if (t.admits(m)) out.add_term(m, c);
  }
  return out;
}

template <class Pick>
FourierFlow mutated(FourierFlow flow, Pick pick, const Rational& factor) {
  for (auto& [alpha, eq] : flow.equations) {
    for (auto& [mono, c] : eq) {
      if (pick(mono)) c *= factor;
    }
  }
  return flow;
}

Rational pp(int g, int d, std::vector<int> A, std::vector<int> psi, int shift = 0) {
  return pixton_pairing(g, d, A, psi, {shift});
}

}  // namespace

int main() {
  criterion(1, "flow extraction: first two flows equal their printed star forms", [](Outcome& o) {
    Rational c24 = make_rational(1, 24);
    for (int D : {5, 7, 9}) {
      Truncation t{D, D};
      DiffPoly2 f1 = star_expand({{make_rational(1, 2), 0, {0, 0}}, {make_rational(1, 12), 2, {2}}}, t).dx();
      DiffPoly2 f2 = star_expand({{make_rational(1, 6), 0, {0, 0, 0}},
                                  {c24, 2, {0, 2}},
                                  {c24, 2, {1, 1}},
                                  {c24, 2, {2, 0}},
                                  {make_rational(1, 240), 4, {4}}},
                                 t)
                         .dx();
      o.require(lax_flow_rhs(1, {D, -1}) == f1, "flow 1 at D=" + std::to_string(D));
      o.require(lax_flow_rhs(2, {D, -1}) == f2, "flow 2 at D=" + std::to_string(D));
    }
    auto s1 = star_factorize(flow_density(1, {8, -1}), 1);
    auto s2 = star_factorize(flow_density(2, {8, -1}), 2);
    o.require(s1.size() == 2 && s1[0].factors == std::vector<int>{0, 0} && s1[0].coeff == make_rational(1, 2) &&
                  s1[1].factors == std::vector<int>{2} && s1[1].coeff == make_rational(1, 12),
              "flow 1 star factors");
    o.require(s2.size() == 5, "flow 2 term count");
    if (s2.size() == 5) {
      std::vector<std::vector<int>> order{{0, 0, 0}, {0, 2}, {1, 1}, {2, 0}, {4}};
      std::vector<Rational> coeff{make_rational(1, 6), c24, c24, c24, make_rational(1, 240)};
      for (int i = 0; i < 5; ++i) o.require(s2[i].factors == order[i] && s2[i].coeff == coeff[i], "flow 2 star term");
    }
  });

  criterion(2, "commutativity of flows 1 and 2 up to eps^6, differential degree 8", [](Outcome& o) {
    o.require(flows_commute(1, 2, {6, 8}), "[D1, D2] != 0");
  });

  criterion(3, "Moyal laws on 200 random inputs and the mu = 0 degeneration", [](Outcome& o) {
    std::mt19937 rng(20261014);
    Truncation t{7, 3};
    auto grade = [](const DMonomial& m) {
      int x = -m.eps, y = -m.mu;
      for (const auto& j : m.jets) {
        x += j.x;
        y += j.y;
      }
      return std::make_pair(x, y);
    };
    std::size_t graded = 0;
    for (int trial = 0; trial < 200; ++trial) {
      DiffPoly2 f = random_poly(rng, t), g = random_poly(rng, t), h = random_poly(rng, t);
      o.require(moyal(moyal(f, g), h) == moyal(f, moyal(g, h)), "associativity");
      o.require(moyal(f, g).mu_zero() == f.mu_zero() * g.mu_zero(), "mu = 0 degeneration");
      DiffPoly2 a = random_poly(rng, t, 1), b = random_poly(rng, t, 1);
      if (a.is_zero() || b.is_zero()) continue;
      auto ga = grade(a.terms().begin()->first), gb = grade(b.terms().begin()->first);
      DiffPoly2 ab = moyal(a, b);
      for (const auto& [m, c] : ab.terms()) o.require(grade(m) == std::make_pair(ga.first + gb.first, ga.second + gb.second), "grading");
      ++graded;
    }
    o.require(graded == 188, "graded sample count");
    o.detail << count("graded", graded);
  });

  criterion(4, "Pixton structure for g <= 2: dimension, d > g vanishing, window stability", [](Outcome& o) {
    std::size_t zeros = 0, shifts = 0;
    std::vector<std::vector<int>> As2{{0, 0}, {1, -1}, {2, -2}, {3, -3}};
    std::vector<std::vector<int>> As3{{0, 0, 0}, {1, 1, -2}, {2, -1, -1}, {3, -2, -1}};
    for (int g = 0; g <= 2; ++g) {
      for (const auto& As : {As2, As3}) {
        for (const auto& A : As) {
          int n = static_cast<int>(A.size());
          if (2 * g - 2 + n <= 0) continue;
          int dim = 3 * g - 3 + n;
          for (int d = 0; d <= std::min(dim, 3); ++d) {
            // Wrong total degree.
            std::vector<int> psi(n, 0);
            psi[0] = dim - d + 1;
            o.require(pp(g, d, A, psi) == 0, "dimension vanishing");
            ++zeros;
            if (d > g) {
              std::vector<int> fit(n, 0);
              fit[0] = dim - d;
              o.require(pp(g, d, A, fit) == 0, "P_g^d = 0 for d > g");
              ++zeros;
            } else if (g >= 1) {
              std::vector<int> fit(n, 0);
              fit[0] = dim - d;
              o.require(pp(g, d, A, fit, 3) == pp(g, d, A, fit), "window shift");
              ++shifts;
            }
          }
        }
      }
    }
    o.require(zeros == 84 && shifts == 40, "case counts");
    o.detail << count("vanishing", zeros) << count("shifted", shifts);
  });

  criterion(5, "DR generating functions C and D", [](Outcome& o) {
    auto r = check_CD_functions({2, 3, 2, 6});
    o.require(r.ok(), std::to_string(r.failures()) + " mismatches");
    o.require(r.checks.size() == 1785, "check count");
    o.detail << count("checks", r.checks.size());
  });

  criterion(6, "two-point corollary for g = 1, 2 and a = 0..3", [](Outcome& o) {
    std::size_t n = 0;
    for (int g = 1; g <= 2; ++g) {
      for (int a = 0; a <= 3; ++a) {
        auto r = check_corollary(g, a);
        o.require(r.ok(), "g=" + std::to_string(g) + " a=" + std::to_string(a));
        n += r.checks.size();
      }
    }
    o.require(n == 20, "check count");
    o.detail << count("checks", n);
  });

  criterion(7, "main theorem in finite windows, with mutation controls", [](Outcome& o) {
    TruncatedPotential P({2, 2, 4, 7}, std::make_shared<PixtonSource>());
    DressedSeries D(P);
    MainTheoremWindow w1{2, 2, 4, 7, 1}, w2{1, 2, 4, 7, 2}, w2big{2, 2, 4, 7, 2};
    FourierFlow f1 = main_theorem_flow(1, w1), f2 = main_theorem_flow(2, w2big);
    auto r1 = check_main_theorem(f1, D, w1);
    auto r2 = check_main_theorem(main_theorem_flow(2, w2), D, w2);
    o.require(r1.ok() && r1.checked == 30, "flow 1 default window");
    o.require(r2.ok() && r2.checked == 11, "flow 2 at G = 1");
    auto r3 = check_main_theorem(f2, D, w2big);
    o.require(r3.ok(), "flow 2 at G = 2");

    TruncatedPotential Pw({2, 2, 6, 10}, std::make_shared<PixtonSource>());
    DressedSeries Dw(Pw);
    MainTheoremWindow e1{2, 2, 6, 10, 1}, e2{2, 2, 6, 10, 2};
    auto x1 = check_main_theorem(main_theorem_flow(1, e1), Dw, e1);
    auto x2 = check_main_theorem(main_theorem_flow(2, e2), Dw, e2);
    o.require(x1.ok() && x1.checked == 1837 && x1.excluded.size() == 776, "flow 1 extended window");
    o.require(x2.ok() && x2.checked == 1409 && x2.excluded.size() == 582, "flow 2 extended window");

    auto linear = [](const ModeMonomial& m) { return m.eps == 2 && m.mu == 0 && m.jets.size() == 1; };
    auto quadratic = [](const ModeMonomial& m) { return m.eps == 0 && m.jets.size() == 2; };
    auto eps4 = [](const ModeMonomial& m) { return m.eps == 4 && m.mu == 0 && m.jets.size() == 1; };
    auto m1 = check_main_theorem(mutated(f1, linear, -1), D, w1);
    auto m2 = check_main_theorem(mutated(f1, quadratic, -1), D, w1);
    auto m3 = check_main_theorem(mutated(f2, eps4, -1), D, w2big);
    o.require(!m1.ok() && !m2.ok() && !m3.ok(), "mutation controls must leave residuals");
    o.detail << count("checked", r1.checked + r2.checked + x1.checked + x2.checked)
             << count("mutantResiduals", m1.mismatches.size() + m2.mismatches.size() + m3.mismatches.size());
  });

  criterion(8, "Witten-Kontsevich slice at mu = 0", [](Outcome& o) {
    std::size_t checked = 0, matched = 0;
    for (int flow : {1, 2}) {
      MainTheoremWindow w{2, 0, 6, 10, flow, true};
      TruncatedPotential psi({2, 0, 6, 10}, std::make_shared<PsiSource>());
      DressedSeries Dpsi(psi);
      auto wk = check_main_theorem(wk_flow(flow, w), Dpsi, w, true);
      o.require(wk.ok() && wk.excluded.empty(), "KdV on the psi potential, flow " + std::to_string(flow));
      checked += wk.checked;

      TruncatedPotential P({2, 2, 6, 10}, std::make_shared<PixtonSource>());
      DressedSeries D(P);
      for (const auto& e : wk.values) {
        Rational pix = D.u(0, 0, tmono_add(e.target, {0, flow}), e.eps, 0);
        o.require(pix == e.lhs, "Pixton mu^0 mode-0 value");
        ++matched;
      }
    }
    o.require(checked == 50 && matched == checked, "check count");
    o.detail << count("checked", checked) << count("crossChecked", matched);
  });

  criterion(9, "string, dilaton and tdeg identities on the potential", [](Outcome& o) {
    auto P = build_potential({2, 2, 4, 7});
    auto r = check_string_dilaton_potential(P);
    o.require(r.ok(), std::to_string(r.failures()) + " mismatches");
    o.require(r.checks.size() == 2410, "check count");
    o.detail << count("checks", r.checks.size());
  });

  criterion(10, "reconstruction from the special flow", [](Outcome& o) {
    ReconstructionBounds b{2, 2, 6, 1};
    FlowWindow fw;
    fw.max_diff_degree = 5;
    auto table = reconstruct_from_special_flow(to_fourier(lax_flow_rhs(1, fw), 2), b);
    TruncatedPotential P({2, 2, 5, 12}, std::make_shared<PixtonSource>());
    DressedSeries D(P);
    std::size_t n = 0;
    for (const auto& [key, v] : table.derivatives()) {
      o.require(v == D.u(key.alpha, 0, key.mono, key.k, key.mu), "entry mismatch");
      ++n;
    }
    for (int alpha = -1; alpha <= 1; ++alpha) {
      o.require(table.derivative({alpha, {}, 1, 0}) == 0 && table.derivative({alpha, {}, 1, 1}) == 0, "seed c_1");
      for (int a1 = -1; a1 <= 1; ++a1) {
        for (int d1 = 0; d1 <= 6; ++d1) {
          Rational expect = (alpha == a1 && d1 == 0) ? 1 : 0;
          o.require(table.derivative({alpha, tmono({{a1, d1}}), 0, 0}) == expect, "seed c_{0;d1}");
        }
      }
    }
    o.require(n == 732, "entry count");
    o.detail << count("entries", n);
  });

  criterion(11, "series identities at cutoff 8, |alpha| <= 3", [](Outcome& o) {
    auto r = verify_series_identities(8, 3);
    o.require(r.ok(), std::to_string(r.failures()) + " mismatches");
    o.require(r.checks.size() == 4473, "check count");
    o.detail << count("checks", r.checks.size());
  });

  criterion(12, "brute-force oracles: weightings (h1 <= 2, r <= 12) and automorphisms (<= 8 half-edges)", [](Outcome& o) {
    std::size_t weightings = 0, auts = 0;
    for (int g = 0; g <= 2; ++g) {
      for (int n = 1; n <= 3; ++n) {
        if (2 * g - 2 + n <= 0) continue;
        for (const auto& rec : enumerate_stable_graphs(g, n)) {
          if (rec.h1 > 2) continue;
          std::vector<int> A(n, 0);
          if (n >= 2) {
            A[0] = 3;
            A[1] = -3 + (n == 3 ? 1 : 0);
            if (n == 3) A[2] = -1;
          }
          const int E = rec.graph.edge_count();
          std::vector<DegreeSplit> splits{{std::vector<int>(n, 0), std::vector<int>(E, 0)}};
          if (E > 0) {
            DegreeSplit s{std::vector<int>(n, 0), std::vector<int>(E, 0)};
            s.edge_orders[0] = 1;
            s.leg_orders[0] = 1;
            splits.push_back(s);
          }
          for (const auto& split : splits) {
            for (long r = 1; r <= 12; ++r) {
              o.require(weighting_sum_at_r(rec.graph, split, A, r) ==
                            oracle::brute_force_weighting_sum(rec.graph, split, A, r),
                        "weighting sum");
              ++weightings;
            }
          }
        }
      }
    }
    for (int g = 0; g <= 3; ++g) {
      for (int n = 0; n <= 8; ++n) {
        if (2 * g - 2 + n <= 0) continue;
        for (const auto& rec : enumerate_stable_graphs(g, n, (8 - n) / 2)) {
          if (rec.graph.half_edge_count() > 8) continue;
          o.require(rec.aut_count == oracle::brute_force_automorphisms(rec.graph), "automorphism count");
          ++auts;
        }
      }
    }
    o.require(weightings == 16164 && auts == 1384, "oracle sample counts");
    o.detail << count("weightings", weightings) << count("graphs", auts);
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
