#include <doctest.h>

#include "ncdr/hierarchy.hpp"
#include "ncdr/pdo.hpp"
#include "ncdr/potential.hpp"

using namespace ncdr;

namespace {

FourierFlow special_flow(const ReconstructionBounds& b) {
  FlowWindow fw;
  fw.max_diff_degree = 2 * b.eps_order + 1;
  return to_fourier(lax_flow_rhs(1, fw), b.n_max * b.Amax);
}

const CCoefficientTable& small_table() {
  static const CCoefficientTable table = reconstruct_from_special_flow(special_flow({2, 2, 6, 1}), {2, 2, 6, 1});
  return table;
}

}  // namespace

TEST_SUITE("hierarchy") {
  TEST_CASE("seed coefficients") {
    const auto& t = small_table();
    for (int alpha = -1; alpha <= 1; ++alpha) {
      for (int k = 0; k <= 1; ++k) CHECK(t.derivative({alpha, {}, k, 0}) == 0);
    }
    CHECK(t.derivative({1, tmono({{1, 0}}), 0, 0}) == 1);
    CHECK(t.derivative({0, tmono({{0, 0}}), 0, 0}) == 1);
    CHECK(t.derivative({0, tmono({{0, 1}}), 0, 0}) == 0);
    CHECK(t.stats().seed_checks > 0);
  }

  TEST_CASE("reconstruction agrees with the dressed Pixton series") {
    const auto& t = small_table();
    TruncatedPotential P({2, 2, 5, 12}, std::make_shared<PixtonSource>());
    DressedSeries D(P);
    std::size_t nonzero = 0;
    for (const auto& [key, v] : t.derivatives()) {
      CAPTURE(tmono_json(key.mono).dump());
      CAPTURE(key.alpha);
      CAPTURE(key.k);
      CAPTURE(key.mu);
      CHECK(v == D.u(key.alpha, 0, key.mono, key.k, key.mu));
      if (sgn(v) != 0) ++nonzero;
    }
    CHECK(t.derivatives().size() == 732);
    CHECK(nonzero == 39);
  }

  TEST_CASE("single-mode KdV special flow against the psi potential") {
    ReconstructionBounds b{2, 2, 4, 0};
    MainTheoremWindow w{1, 0, 4, 7, 1};
    auto t = reconstruct_from_special_flow(wk_flow(1, w), b);
    CHECK(t.derivative({0, tmono({{0, 0}, {0, 0}}), 0, 0}) == 0);
    CHECK(t.coefficient({0, tmono({{0, 3}}), 2, 0}) == make_rational(1, 24));
    TruncatedPotential P({2, 0, 6, 9}, std::make_shared<PsiSource>());
    DressedSeries D(P);
    for (const auto& [key, v] : t.derivatives()) {
      if (key.mu == 0) {
        CHECK(v == D.w(0, 0, key.mono, key.k, 0));
      } else {
        CHECK(v == 0);
      }
    }
  }

  TEST_CASE("no entry is read before it is smaller in the well-order") {
    // The table finishes without a contract error, and lookups of the entry
    // under construction are exactly the self-term probes.
    const auto& t = small_table();
    CHECK(t.stats().lookups > t.stats().self_lookups);
    CHECK(t.stats().self_lookups > 0);
  }

  TEST_CASE("hypothesis violations are contract errors") {
    ReconstructionBounds b{2, 2, 6, 1};
    FourierFlow doubled = special_flow(b);
    for (auto& [alpha, eq] : doubled.equations) {
      for (auto& [mono, c] : eq) c *= 2;
    }
    CHECK_THROWS_AS(reconstruct_from_special_flow(doubled, b), ContractError);

    FourierFlow skewed = special_flow(b);
    add_mode_term(skewed.equations[0], ModeMonomial{0, 1, {ModeJet{0, 1}}}, 1);
    CHECK_THROWS_AS(reconstruct_from_special_flow(skewed, b), ContractError);

    CHECK_THROWS_AS(reconstruct_from_special_flow(special_flow({2, 2, 6, 0}), b), std::invalid_argument);
  }

  TEST_CASE("cache text round trip") {
    const auto& t = small_table();
    std::istringstream in(t.to_cache_text());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
      Rational v;
      CKey key = CCoefficientTable::parse_cache_key(line, &v);
      CHECK(t.coefficient(key) == v);
      ++lines;
    }
    CHECK(lines == t.derivatives().size());
    CHECK_THROWS_AS(CCoefficientTable::parse_cache_key("1;2;3"), std::invalid_argument);
    CHECK(t.to_json()["entryCount"] == 732);
  }

  TEST_CASE("series identities") {
    auto r = verify_series_identities(8, 3);
    CHECK(r.ok());
    CHECK(r.checks.size() == 4473);
    for (const auto& c : r.checks) {
      if (c.name == "log-derivative" && c.where["alpha"] == 0 && c.where["z"] == 2) {
        CHECK(c.lhs == make_rational(-1, 12));
        CHECK(c.rhs == make_rational(-1, 12));
      }
      if (c.name == "log-derivative" && c.where["alpha"] == 1) CHECK(c.lhs == 0);
      if (c.name == "euler-S" && c.where["alpha1"] == 0 && c.where["alpha2"] == 0 && c.where["z1"] == 0 &&
          c.where["z2"] == 0) {
        CHECK(c.lhs == 1);
        CHECK(c.rhs == 1);
      }
    }
    CHECK(verify_series_identities(6, 0).ok());
    CHECK_THROWS_AS(verify_series_identities(1, 3), std::invalid_argument);
  }
}
