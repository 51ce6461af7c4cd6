// Copyright 2026 The qclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "qclass/errors.hpp"
#include "qclass/su2.hpp"

using namespace qclass;
using su2::clebsch_gordan;
using su2::wigner_6j;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

// Textbook coupling of spin j with spin 1/2, J = j + 1/2 or j - 1/2.
double cg_half(int tj, int tm, int tms, int tJ) {
  const double j = 0.5 * tj, M = 0.5 * (tm + tms);
  if (tJ == tj + 1) return std::sqrt((j + (tms > 0 ? M : -M) + 0.5) / (2 * j + 1));
  const double s = tms > 0 ? -1.0 : 1.0;
  return s * std::sqrt((j - (tms > 0 ? M : -M) + 0.5) / (2 * j + 1));
}

// Multiplicities from the Clebsch-Gordan series, one qubit at a time.
std::map<int, long> series(int n) {
  std::map<int, long> nu{{0, 1}};
  for (int k = 0; k < n; ++k) {
    std::map<int, long> next;
    for (auto [tj, c] : nu) {
      next[tj + 1] += c;
      if (tj > 0) next[tj - 1] += c;
    }
    nu = next;
  }
  return nu;
}

}  // namespace

TEST(HalfInteger, ParseAndPrint) {
  EXPECT_EQ(HalfInteger::parse("3/2").twice(), 3);
  EXPECT_EQ(HalfInteger::parse("1.5").twice(), 3);
  EXPECT_EQ(HalfInteger::parse("-1/2").twice(), -1);
  EXPECT_EQ(HalfInteger::parse("2").twice(), 4);
  EXPECT_EQ(h(3).str(), "3/2");
  EXPECT_EQ(h(4).str(), "2");
  EXPECT_THROW(HalfInteger::parse("1/3"), DomainError);
  EXPECT_THROW(HalfInteger::parse("0.3"), DomainError);
}

TEST(Su2, Dim) {
  EXPECT_EQ(su2::dim(0), 1);
  EXPECT_EQ(su2::dim(1), 2);
  EXPECT_EQ(su2::dim(5), 6);
  EXPECT_THROW(su2::dim(-1), DomainError);
}

TEST(Su2, ClebschGordanAnchors) {
  EXPECT_NEAR(clebsch_gordan(h(2), h(0), h(1), h(1), h(3), h(1)), std::sqrt(2.0 / 3.0), 1e-14);
  EXPECT_NEAR(clebsch_gordan(h(2), h(0), h(1), h(1), h(1), h(1)), -std::sqrt(1.0 / 3.0), 1e-14);
  EXPECT_NEAR(clebsch_gordan(h(0), h(0), h(0), h(0), h(0), h(0)), 1.0, 1e-15);
  EXPECT_EQ(clebsch_gordan(h(2), h(0), h(1), h(1), h(3), h(3)), 0.0);  // M mismatch
  EXPECT_EQ(clebsch_gordan(h(2), h(0), h(1), h(1), h(5), h(1)), 0.0);  // triangle
  EXPECT_THROW(clebsch_gordan(h(2), h(1), h(1), h(1), h(3), h(2)), DomainError);
}

TEST(Su2, ClebschGordanMatchesSpinHalfTable) {
  for (int tj = 0; tj <= 12; ++tj)
    for (int tm = -tj; tm <= tj; tm += 2)
      for (int tms : {-1, 1})
        for (int tJ : {tj - 1, tj + 1}) {
          if (tJ < 0 || std::abs(tm + tms) > tJ) continue;
          EXPECT_NEAR(clebsch_gordan(h(tj), h(tm), h(1), h(tms), h(tJ), h(tm + tms)), cg_half(tj, tm, tms, tJ), 1e-13)
              << tj << " " << tm << " " << tms << " " << tJ;
        }
}

TEST(Su2, ClebschGordanOrthogonality) {
  for (int t1 = 0; t1 <= 5; ++t1)
    for (int t2 = 0; t2 <= 5; ++t2)
      for (int tJ = std::abs(t1 - t2); tJ <= t1 + t2; tJ += 2)
        for (int tJp = std::abs(t1 - t2); tJp <= t1 + t2; tJp += 2)
          for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
            double s = 0.0;
            for (int m1 = -t1; m1 <= t1; m1 += 2) {
              const int m2 = tM - m1;
              if (std::abs(m2) > t2) continue;
              s += clebsch_gordan(h(t1), h(m1), h(t2), h(m2), h(tJ), h(tM)) *
                   clebsch_gordan(h(t1), h(m1), h(t2), h(m2), h(tJp), h(tM));
            }
            EXPECT_NEAR(s, tJ == tJp ? 1.0 : 0.0, 1e-12);
          }
}

TEST(Su2, SixJAnchors) {
  EXPECT_NEAR(wigner_6j(h(0), h(0), h(0), h(0), h(0), h(0)), 1.0, 1e-15);
  EXPECT_NEAR(wigner_6j(h(1), h(1), h(2), h(1), h(1), h(0)), 0.5, 1e-14);
  EXPECT_NEAR(wigner_6j(h(1), h(1), h(2), h(1), h(1), h(2)), 1.0 / 6.0, 1e-14);
  EXPECT_EQ(wigner_6j(h(1), h(1), h(6), h(1), h(1), h(0)), 0.0);
}

TEST(Su2, SixJWithZeroEntry) {
  // {a b c; 0 c b} = (-1)^(a+b+c) / sqrt((2b+1)(2c+1))
  for (int ta = 0; ta <= 6; ++ta)
    for (int tb = 0; tb <= 6; ++tb)
      for (int tc = std::abs(ta - tb); tc <= ta + tb; tc += 2) {
        const double sign = ((ta + tb + tc) / 2) % 2 == 0 ? 1.0 : -1.0;
        EXPECT_NEAR(wigner_6j(h(ta), h(tb), h(tc), h(0), h(tc), h(tb)), sign / std::sqrt((tb + 1.0) * (tc + 1.0)),
                    1e-13);
      }
}

TEST(Su2, SixJOrthogonality) {
  // sum_x (2x+1)(2f+1) {a b x; c d f}{a b x; c d f'} = delta_{f f'}
  const int ta = 3, tb = 2, tc = 3, td = 4;
  for (int tf = 0; tf <= 10; ++tf)
    for (int tfp = 0; tfp <= 10; ++tfp) {
      if (!triangle(h(ta), h(td), h(tf)) || !triangle(h(tc), h(tb), h(tf))) continue;
      if (!triangle(h(ta), h(td), h(tfp)) || !triangle(h(tc), h(tb), h(tfp))) continue;
      double s = 0.0;
      for (int tx = 0; tx <= 12; ++tx)
        s += (tx + 1.0) * (tf + 1.0) * wigner_6j(h(ta), h(tb), h(tx), h(tc), h(td), h(tf)) *
             wigner_6j(h(ta), h(tb), h(tx), h(tc), h(td), h(tfp));
      EXPECT_NEAR(s, tf == tfp ? 1.0 : 0.0, 1e-12) << tf << " " << tfp;
    }
}

TEST(Su2, RecouplingMatchesExplicitCgSum) {
  // <(AC)j, B; J M | A, (CB)j'; J M> summed over magnetic numbers.
  using S = su2::CouplingScheme;
  for (int n = 1; n <= 4; ++n) {
    const int tA = n, tC = n, tB = 1;
    for (int tj = 0; tj <= 2 * n; tj += 2)
      for (int tjp : {n - 1, n + 1}) {
        if (tjp < 0) continue;
        for (int tJ = std::abs(tj - 1); tJ <= tj + 1; tJ += 2) {
          if (!triangle(h(tA), h(tjp), h(tJ))) continue;
          const int tM = tJ;
          double s = 0.0;
          for (int mA = -tA; mA <= tA; mA += 2)
            for (int mC = -tC; mC <= tC; mC += 2)
              for (int mB : {-1, 1}) {
                if (mA + mC + mB != tM || std::abs(mA + mC) > tj || std::abs(mC + mB) > tjp) continue;
                s += clebsch_gordan(h(tA), h(mA), h(tC), h(mC), h(tj), h(mA + mC)) *
                     clebsch_gordan(h(tj), h(mA + mC), h(tB), h(mB), h(tJ), h(tM)) *
                     clebsch_gordan(h(tC), h(mC), h(tB), h(mB), h(tjp), h(mC + mB)) *
                     clebsch_gordan(h(tA), h(mA), h(tjp), h(mC + mB), h(tJ), h(tM));
              }
          const double got = su2::recoupling(h(tA), h(tC), h(tB), h(tJ), S{S::Order::ac_b, h(tj)},
                                             S{S::Order::a_cb, h(tjp)});
          EXPECT_NEAR(got, s, 1e-12) << n << " " << tj << " " << tjp << " " << tJ;
        }
      }
  }
}

TEST(Su2, RecouplingOverlapAnchors) {
  EXPECT_NEAR(su2::recoupling_overlap(1, h(2), su2::Sign::plus), 1.0, 1e-15);
  EXPECT_NEAR(su2::recoupling_overlap(1, h(2), su2::Sign::minus), 0.5, 1e-15);
  EXPECT_NEAR(su2::recoupling_overlap(2, h(2), su2::Sign::plus), std::sqrt(5.0 / 6.0), 1e-15);
  EXPECT_THROW(su2::recoupling_overlap(1, h(0), su2::Sign::minus), DomainError);
  EXPECT_THROW(su2::recoupling_overlap(1, h(4), su2::Sign::plus), DomainError);
}

TEST(Su2, RecouplingOverlapIsUnsignedRecoupling) {
  using S = su2::CouplingScheme;
  for (int n = 1; n <= 8; ++n)
    for (int j = 0; j <= n; ++j)
      for (auto sign : {su2::Sign::plus, su2::Sign::minus}) {
        if (j == 0 && sign == su2::Sign::minus) continue;
        const HalfInteger J = HalfInteger::from_int(j) + (sign == su2::Sign::plus ? kHalf : -kHalf);
        const double r = su2::recoupling(h(n), h(n), kHalf, J, S{S::Order::ac_b, HalfInteger::from_int(j)},
                                         S{S::Order::a_cb, h(n + 1)});
        EXPECT_NEAR(std::abs(r), su2::recoupling_overlap(n, HalfInteger::from_int(j), sign), 1e-12);
      }
}

TEST(Su2, MultiplicityMatchesSeries) {
  for (int n = 0; n <= 30; ++n)
    for (auto [tj, c] : series(n)) EXPECT_EQ(su2::multiplicity(n, h(tj)), c) << n << " " << tj;
  EXPECT_EQ(su2::multiplicity(2, h(2)), 1);
  EXPECT_EQ(su2::multiplicity(2, h(0)), 1);
  EXPECT_EQ(su2::multiplicity(4, h(2)), 3);
  EXPECT_THROW(su2::multiplicity(3, h(2)), DomainError);
}

TEST(Su2, LogMultiplicity) {
  for (int n = 1; n <= 40; ++n)
    for (int tj = n % 2; tj <= n; tj += 2)
      EXPECT_NEAR(su2::log_multiplicity(n, h(tj)), std::log(static_cast<double>(su2::multiplicity(n, h(tj)))), 1e-10);
}
