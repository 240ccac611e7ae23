#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "ncdr/psi.hpp"

using namespace ncdr;

TEST_SUITE("psi") {
  TEST_CASE("seed values and small cases") {
    CHECK(psi_correlator(0, {0, 0, 0}) == 1);
    CHECK(psi_correlator(0, {1, 0, 0, 0}) == 1);
    CHECK(psi_correlator(1, {1}) == make_rational(1, 24));
    CHECK(psi_correlator(1, {0, 2}) == make_rational(1, 24));
    CHECK(psi_correlator(1, {1, 1}) == make_rational(1, 24));
    CHECK_THROWS_AS(psi_correlator(0, {0, 0}), std::domain_error);
    CHECK_THROWS_AS(psi_correlator(1, {}), std::domain_error);
  }

  TEST_CASE("known genus-2 and genus-3 values") {
    CHECK(psi_correlator(2, {4}) == make_rational(1, 1152));
    CHECK(psi_correlator(2, {2, 3}) == make_rational(29, 5760));
    CHECK(psi_correlator(2, {2, 2, 2}) == make_rational(7, 240));
    CHECK(psi_correlator(3, {7}) == make_rational(1, 82944));
  }

  TEST_CASE("genus-0 multinomial closed form") {
    // <tau_{d_1}..tau_{d_n}>_0 = (n-3)! / prod d_i!.
    std::mt19937 rng(3);
    for (int n = 3; n <= 8; ++n) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> d(n, 0);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int k = 0; k < n - 3; ++k) ++d[pick(rng)];
        Rational expected(factorial(n - 3));
        for (int x : d) expected /= Rational(factorial(x));
        CHECK(psi_correlator(0, d) == expected);
      }
    }
  }

  TEST_CASE("one-point and genus-1 closed forms") {
    for (int g = 1; g <= 4; ++g) {
      Rational expected = Rational(1) / (power(Rational(24), g) * Rational(factorial(g)));
      CHECK(psi_correlator(g, {3 * g - 2}) == expected);
    }
    for (int n = 1; n <= 6; ++n) {
      std::vector<int> ones(n, 1);
      CHECK(psi_correlator(1, ones) == Rational(factorial(n - 1)) / 24);
    }
  }

  TEST_CASE("dimension vanishing and permutation invariance") {
    CHECK(psi_correlator(1, {2}) == 0);
    CHECK(psi_correlator(2, {1, 1}) == 0);
    std::vector<int> d{3, 0, 2, 2, 1};
    CHECK(sgn(psi_correlator(2, d)) != 0);
    std::sort(d.begin(), d.end());
    Rational base = psi_correlator(2, d);
    do {
      CHECK(psi_correlator(2, d) == base);
    } while (std::next_permutation(d.begin(), d.end()));
  }

  TEST_CASE("string and dilaton") {
    CHECK(check_string_dilaton(0, std::vector<int>{0, 0, 0}));
    CHECK(check_string_dilaton(1, std::vector<int>{1}));
    CHECK(check_string_dilaton(1, std::vector<int>{2}));
    CHECK(check_string_dilaton(2, std::vector<int>{4}));
    CHECK(check_string_dilaton_range(3, 6) == 0);
  }

  TEST_CASE("disk cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "ncdr_psi_cache_test";
    std::filesystem::remove_all(dir);
    auto file = dir / "psi.txt";
    {
      PsiTable t;
      t.attach_cache(file);
      CHECK(t.correlator(2, std::vector<int>{2, 3}) == make_rational(29, 5760));
    }
    PsiTable fresh;
    fresh.attach_cache(file);
    CHECK(fresh.size() > 0);
    bool found = false;
    for (auto& [k, v] : fresh.entries()) {
      if (k.genus == 2 && k.exponents == std::vector<int>{2, 3}) found = v == make_rational(29, 5760);
    }
    CHECK(found);
    auto [key, value] = parse_psi_cache_line("1;1;1/24");
    CHECK(key.genus == 1);
    CHECK(value == make_rational(1, 24));
    CHECK(format_psi_cache_line(key, value) == "1;1;1/24");
    std::filesystem::remove_all(dir);
  }
}
