#include <doctest.h>

#include "ncdr/pixton.hpp"
#include "ncdr/potential.hpp"
#include "ncdr/psi.hpp"

using namespace ncdr;

namespace {

const TruncatedPotential& default_potential() {
  static const TruncatedPotential p = build_potential({2, 2, 4, 7});
  return p;
}

// Multiplies every flow term selected by `pick` by `factor`.
template <class Pick>
FourierFlow mutated(FourierFlow flow, Pick pick, const Rational& factor) {
  for (auto& [alpha, eq] : flow.equations) {
    for (auto& [mono, c] : eq) {
      if (pick(mono)) c *= factor;
    }
  }
  return flow;
}

bool is_dispersive_linear(const ModeMonomial& m) { return m.eps == 2 && m.mu == 0 && m.jets.size() == 1; }
bool is_quadratic_dispersionless(const ModeMonomial& m) { return m.eps == 0 && m.jets.size() == 2; }

}  // namespace

TEST_SUITE("potential") {
  TEST_CASE("named coefficients") {
    const auto& P = default_potential();
    CHECK(P.coefficient(0, 0, tmono({{0, 0}, {0, 0}, {0, 0}})) == make_rational(1, 6));
    for (int a = 1; a <= 2; ++a) {
      CHECK(P.coefficient(0, 0, tmono({{-a, 0}, {0, 0}, {a, 0}})) == 1);
      std::vector<int> A{a, -a}, d{0, 1};
      Rational c = P.coefficient(1, 1, tmono({{a, 0}, {-a, 1}}));
      CHECK(c == pixton_pairing(1, 1, A, d) / 2);
      CHECK(c == make_rational(a * a - 1, 24));
    }
    CHECK(P.coefficient(0, 0, tmono({{1, 0}, {1, 0}, {-2, 0}})) == make_rational(1, 2));
  }

  TEST_CASE("mu = 0 slice is the psi potential") {
    const auto& P = default_potential();
    for (const auto& [key, v] : P.entries()) {
      if (key.j != 0) continue;
      std::vector<int> d;
      for (const auto& t : key.mono) d.push_back(t.d);
      CHECK(P.derivative(key.g, 0, key.mono) == psi_correlator(key.g, d));
    }
  }

  TEST_CASE("entries conserve mode weight and respect the grading") {
    const auto& P = default_potential();
    CHECK(P.entries().size() == 1612);
    for (const auto& [key, v] : P.entries()) {
      CHECK(mode_sum(key.mono) == 0);
      CHECK(key.j <= key.g);
      CHECK(psi_weight(key.mono) == 3 * key.g - 3 + static_cast<int>(key.mono.size()) - key.j);
      CHECK(sgn(v) != 0);
    }
    auto j = P.to_json();
    CHECK(j.contains("cutoffs"));
  }

  TEST_CASE("dressed series") {
    const auto& P = default_potential();
    DressedSeries D(P);
    for (int b = -2; b <= 2; ++b) {
      for (int n = 0; n <= 3; ++n) CHECK(D.w(b, n, {}, 0, 0) == ((b == 0 && n == 1) ? 1 : 0));
    }
    std::vector<TMonomial> probes = {tmono({{0, 1}}), tmono({{1, 0}, {-1, 2}}), tmono({{0, 4}}), tmono({{2, 1}, {-2, 1}})};
    for (const auto& M : probes) {
      for (int e = 0; e <= 4; e += 2) {
        CHECK(D.u(0, 0, M, e, 0) == D.w(0, 0, M, e, 0));
        for (int m = 0; m <= e; m += 2) CHECK(D.u(1, 0, M, e, m) == D.w(1, 0, M, e, m));
      }
    }
    // T_0(z) = 1 + z^2/24 + ...: the first correction sees d_x^2.
    TMonomial M = tmono({{0, 1}, {0, 1}});
    CHECK(D.u(0, 0, M, 2, 2) == D.w(0, 0, M, 2, 2) + make_rational(1, 24) * D.w(0, 2, M, 0, 0));
  }

  TEST_CASE("main theorem in the default windows") {
    const auto& P = default_potential();
    DressedSeries D(P);
    MainTheoremWindow w1{2, 2, 4, 7, 1};
    auto r1 = check_main_theorem(main_theorem_flow(1, w1), D, w1);
    CHECK(r1.ok());
    CHECK(r1.checked == 30);
    MainTheoremWindow w2{1, 2, 4, 7, 2};
    auto r2 = check_main_theorem(main_theorem_flow(2, w2), D, w2);
    CHECK(r2.ok());
    CHECK(r2.checked == 11);
    auto j = r1.to_json();
    CHECK(j["mismatches"].empty());
    CHECK(j["checkedCoefficientCount"] == 30);
  }

  TEST_CASE("main theorem in a wider window") {
    TruncatedPotential P({2, 2, 5, 9}, std::make_shared<PixtonSource>());
    DressedSeries D(P);
    MainTheoremWindow w{2, 2, 5, 9, 1};
    auto r = check_main_theorem(main_theorem_flow(1, w), D, w);
    CHECK(r.ok());
    CHECK(r.checked == 337);
  }

  TEST_CASE("mutated flows leave residuals") {
    const auto& P = default_potential();
    DressedSeries D(P);
    MainTheoremWindow w1{2, 2, 4, 7, 1};
    FourierFlow f1 = main_theorem_flow(1, w1);
    CHECK_FALSE(check_main_theorem(mutated(f1, is_dispersive_linear, -1), D, w1).ok());
    CHECK_FALSE(check_main_theorem(mutated(f1, is_quadratic_dispersionless, -1), D, w1).ok());
    MainTheoremWindow w2{2, 2, 4, 7, 2};
    FourierFlow f2 = main_theorem_flow(2, w2);
    CHECK(check_main_theorem(f2, D, w2).ok());
    auto eps4 = [](const ModeMonomial& m) { return m.eps == 4 && m.mu == 0 && m.jets.size() == 1; };
    CHECK_FALSE(check_main_theorem(mutated(f2, eps4, make_rational(241, 240)), D, w2).ok());
  }

  TEST_CASE("Witten-Kontsevich slice") {
    MainTheoremWindow w{2, 0, 4, 7, 1, true};
    TruncatedPotential psi({2, 0, 4, 7}, std::make_shared<PsiSource>());
    DressedSeries Dpsi(psi);
    auto wk = check_main_theorem(wk_flow(1, w), Dpsi, w, true);
    CHECK(wk.ok());
    CHECK(wk.checked > 0);

    const auto& P = default_potential();
    DressedSeries D(P);
    MainTheoremWindow wp{2, 2, 4, 7, 1};
    auto full = check_main_theorem(main_theorem_flow(1, wp), D, wp, true);
    std::map<std::tuple<TMonomial, int>, Rational> pixton_values;
    for (const auto& e : full.values) {
      if (e.a == 0 && e.mu == 0 && mode_sum(e.target) == 0 &&
          std::all_of(e.target.begin(), e.target.end(), [](const TVar& v) { return v.a == 0; })) {
        pixton_values[{e.target, e.eps}] = e.lhs;
      }
    }
    std::size_t matched = 0;
    for (const auto& e : wk.values) {
      auto it = pixton_values.find({e.target, e.eps});
      if (it == pixton_values.end()) continue;
      CHECK(it->second == e.lhs);
      ++matched;
    }
    CHECK(matched == wk.values.size());
  }

  TEST_CASE("two-point corollary") {
    for (int g = 1; g <= 2; ++g) {
      for (int a = 0; a <= 3; ++a) CHECK(check_corollary(g, a).ok());
    }
    auto r = check_corollary(1, 0);
    bool seen = false;
    for (const auto& c : r.checks) {
      if (c.where["j"] == 1) {
        CHECK(c.lhs == make_rational(-1, 24));
        seen = true;
      }
    }
    CHECK(seen);
    for (const auto& c : check_corollary(1, 2).checks) {
      if (c.where["j"] == 1) CHECK(c.rhs == make_rational(1, 8));
    }
  }

  TEST_CASE("string, dilaton and tdeg identities") {
    auto r = check_string_dilaton_potential(default_potential());
    CHECK(r.ok());
    CHECK(r.checks.size() == 2410);
    auto psi_only = build_potential({2, 0, 4, 7}, std::make_shared<PsiSource>());
    CHECK(check_string_dilaton_potential(psi_only).ok());
  }

  TEST_CASE("C and D functions") {
    auto r = check_CD_functions();
    CHECK(r.ok());
    CHECK(r.checks.size() == 1785);
    for (int alpha = 0; alpha <= 3; ++alpha) {
      std::vector<int> A{alpha, -alpha, 0}, d{2, 0, 0};
      CHECK(dr_pairing(1, A, d) == make_rational(alpha * alpha - 1, 24));
    }
  }
}
