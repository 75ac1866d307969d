#include "dioph/padic.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dioph;

namespace {

std::vector<unsigned long> digit_list(std::uint64_t n, unsigned long base) {
  return padic::digits(n, base).digits;
}

}  // namespace

TEST(Digits, SmallExpansions) {
  EXPECT_EQ(digit_list(13, 2), (std::vector<unsigned long>{1, 0, 1, 1}));
  EXPECT_TRUE(digit_list(0, 7).empty());
  EXPECT_EQ(digit_list(255, 16), (std::vector<unsigned long>{15, 15}));
}

TEST(Digits, RejectsBadInput) {
  EXPECT_THROW(padic::digits(5, 1), DomainError);
  EXPECT_THROW(padic::digits(-1, 10), DomainError);
}

TEST(Digits, RoundTripAndOracle) {
  for (unsigned long base : {2ul, 3ul, 10ul, 16ul}) {
    for (std::uint64_t n = 0; n < 1000000; n += (n < 5000 ? 1 : 997)) {
      const auto d = padic::digits(n, base);
      ASSERT_EQ(d.value(), n);
      ASSERT_TRUE(d.digits.empty() || d.digits.back() != 0);
      std::vector<unsigned long> expect;
      for (auto v : oracle::digits(n, base)) expect.push_back(v);
      ASSERT_EQ(d.digits, expect);
    }
  }
}

TEST(Digits, LargeBasesAndLargeValues) {
  const BigInt n = pow_ui(3, 500) + 12345;
  for (unsigned long base : {2ul, 7ul, 36ul, 37ul, 62ul, 1000ul}) {
    EXPECT_EQ(padic::digits(n, base).value(), n);
  }
}

TEST(Sigma, Examples) {
  EXPECT_EQ(padic::sigma(0, 2), 0);
  EXPECT_EQ(padic::sigma(13, 2), 3);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    for (unsigned long k = 0; k < 40; ++k) EXPECT_EQ(padic::sigma(pow_ui(p, k), p), 1);
  }
  EXPECT_THROW(padic::sigma(3, 1), DomainError);
}

TEST(Sigma, InvariantUnderPowersOfBase) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const BigInt m = static_cast<unsigned long>(rng() % 1000000);
    for (unsigned long p : {2ul, 3ul}) {
      EXPECT_EQ(padic::sigma(m * pow_ui(p, i % 9), p), padic::sigma(m, p));
    }
  }
}

TEST(Tau, Examples) {
  EXPECT_EQ(padic::tau(17, 0, 3), 0u);
  EXPECT_EQ(padic::tau(1, 1, 2), 1u);
  EXPECT_EQ(padic::tau(3, 1, 2), 2u);
  EXPECT_THROW(padic::tau(1, 1, 4), DomainError);
}

TEST(Tau, DigitSumForm) {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    for (std::uint64_t a = 0; a < 300; ++a) {
      for (std::uint64_t b = 0; b < 300; b += 7) {
        const std::uint64_t expect =
            (oracle::digit_sum(a, p) + oracle::digit_sum(b, p) - oracle::digit_sum(a + b, p)) / (p - 1);
        ASSERT_EQ(padic::tau(a, b, p), expect) << a << " " << b << " " << p;
      }
    }
  }
}

TEST(Tau, MillionBitOperands) {
  // 2^n - 1 plus 1 carries n times.
  const unsigned long n = 1 << 20;
  EXPECT_EQ(padic::tau(pow_ui(2, n) - 1, 1, 2), n);
  EXPECT_EQ(padic::carries(pow_ui(10, 3000) - 1, 1, 10), 3000u);
}

TEST(OrdFactorial, Examples) {
  EXPECT_EQ(padic::ord_factorial(0, 5), 0);
  EXPECT_EQ(padic::ord_factorial(4, 2), 3);
  EXPECT_EQ(padic::ord_factorial(100, 5), 24);
  EXPECT_THROW(padic::ord_factorial(10, 6), DomainError);
  const auto table = oracle::factorial_valuations(5000, 3);
  for (std::uint64_t n = 0; n <= 5000; ++n) ASSERT_EQ(padic::ord_factorial(n, 3), table[n]);
}

TEST(OrdBinom, Examples) {
  EXPECT_EQ(padic::ord_binom(4, 1, 2), 2u);
  EXPECT_EQ(padic::ord_binom(9, 0, 5), 0u);
  // C(6, 3) = 20 = 2^2 * 5.
  EXPECT_EQ(oracle::valuation(oracle::binomial(6, 3), 3), 0u);
  EXPECT_EQ(padic::ord_binom(6, 3, 3), 0u);
  EXPECT_EQ(padic::ord_binom(6, 3, 2), 2u);
  EXPECT_THROW(padic::ord_binom(3, 4, 2), DomainError);
}

TEST(OrdBinom, AgreesWithDirectBinomials) {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (std::uint64_t m = 0; m <= 120; ++m) {
      for (std::uint64_t k = 0; k <= m; ++k) {
        ASSERT_EQ(padic::ord_binom(m, k, p), oracle::valuation(oracle::binomial(m, k), p));
      }
    }
  }
}
