#include <gtest/gtest.h>

#include "support.hpp"

namespace cp = chainpend;
using cp::Mat;
using cp::Vec;
using cp::Vec3;

namespace {

void expect_kind(const std::function<void()>& f, cp::ErrorKind kind) {
  try {
    f();
    ADD_FAILURE() << "expected " << cp::to_string(kind);
  } catch (const cp::Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

Mat from(std::initializer_list<std::initializer_list<double>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()),
        static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

}  // namespace

TEST(Hat, BasisCrossProduct) {
  EXPECT_TRUE((cp::hat(cp::kE3) * cp::kE1).isApprox(cp::kE2));
}

TEST(Hat, ExplicitEntries) {
  const Mat expected = from({{0, -3, 2}, {3, 0, -1}, {-2, 1, 0}});
  EXPECT_EQ(Mat(cp::hat(Vec3(1, 2, 3))), expected);
}

TEST(Hat, Identities) {
  cp::testing::Sampler rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 a = rng.vec3(3.0), b = rng.vec3(3.0);
    const cp::Mat3 ha = cp::hat(a), hb = cp::hat(b);
    EXPECT_LT((ha * a).norm(), 1e-14);
    EXPECT_LT((ha * b - a.cross(b)).norm(), 1e-13);
    EXPECT_LT((ha + ha.transpose()).norm(), 1e-15);
    EXPECT_LT((ha * hb - hb * ha - cp::hat(a.cross(b))).norm(), 1e-12);
    EXPECT_LT((ha * ha - (a * a.transpose() - a.squaredNorm() * cp::Mat3::Identity())).norm(),
              1e-12);
    EXPECT_LT((cp::vee(ha) - a).norm(), 1e-15);
  }
}

TEST(Vee, InverseOfHat) {
  EXPECT_EQ(cp::vee(cp::hat(Vec3(1, 2, 3))), Vec3(1, 2, 3));
  EXPECT_EQ(cp::vee(cp::Mat3::Zero()), Vec3::Zero());
}

TEST(Vee, RejectsSymmetric) {
  expect_kind([] { cp::vee(cp::Mat3::Identity()); }, cp::ErrorKind::NotSkew);
}

TEST(SolveLinear, Examples) {
  EXPECT_EQ(cp::solve_linear(Mat::Identity(3, 3), Vec3(1, 2, 3)), Mat(Vec3(1, 2, 3)));
  const Mat x = cp::solve_linear(from({{2, 0}, {0, 4}}), from({{2}, {8}}));
  EXPECT_NEAR(x(0), 1.0, 1e-15);
  EXPECT_NEAR(x(1), 2.0, 1e-15);
}

TEST(SolveLinear, Singular) {
  expect_kind([] { cp::solve_linear(from({{1, 1}, {1, 1}}), from({{1}, {2}})); },
              cp::ErrorKind::Singular);
}

TEST(SolveLinear, RandomResidual) {
  cp::testing::Sampler rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat a = rng.matrix(6, 6) + 3 * Mat::Identity(6, 6);
    const Mat b = rng.matrix(6, 2);
    EXPECT_LT((a * cp::solve_linear(a, b) - b).norm(), 1e-12);
  }
}

TEST(Pencil, Examples) {
  auto values = [](const Mat& g, const Mat& m) { return cp::spd_pencil_eigs(g, m).values; };
  Vec v = values(from({{1, 0}, {0, 4}}), Mat::Identity(2, 2));
  EXPECT_NEAR(v(0), 1.0, 1e-14);
  EXPECT_NEAR(v(1), 4.0, 1e-14);

  v = values(Mat::Zero(3, 3), from({{2, 1, 0}, {1, 2, 0}, {0, 0, 1}}));
  EXPECT_LT(v.cwiseAbs().maxCoeff(), 1e-15);

  // det(G - mu M) = (2 - mu)(-2 mu)
  v = values(from({{2, 0}, {0, 0}}), from({{1, 0}, {0, 2}}));
  EXPECT_NEAR(v(0), 0.0, 1e-15);
  EXPECT_NEAR(v(1), 2.0, 1e-14);
}

TEST(Pencil, ResidualAndNormalization) {
  cp::testing::Sampler rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat m = rng.spd(7);
    Mat g = rng.matrix(7, 7);
    g = (g + g.transpose()).eval();
    const cp::PencilEigen pe = cp::spd_pencil_eigs(g, m);
    for (Eigen::Index k = 1; k < pe.values.size(); ++k) {
      EXPECT_LE(pe.values(k - 1), pe.values(k));
    }
    const Mat res = g * pe.vectors - m * pe.vectors * pe.values.asDiagonal();
    EXPECT_LT(res.norm(), 1e-10 * (g.norm() + m.norm()));
    EXPECT_LT((pe.vectors.transpose() * m * pe.vectors - Mat::Identity(7, 7)).norm(), 1e-10);
  }
}

TEST(Pencil, RejectsIndefiniteMass) {
  expect_kind([] { cp::spd_pencil_eigs(Mat::Identity(2, 2), from({{1, 0}, {0, -1}})); },
              cp::ErrorKind::NotSPD);
  expect_kind([] { cp::spd_pencil_eigs(from({{1, 2}, {0, 1}}), Mat::Identity(2, 2)); },
              cp::ErrorKind::InvalidArgument);
}

TEST(EigsReal, Examples) {
  auto e = cp::eigs_real(from({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
  ASSERT_EQ(e.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(e[k].real(), k + 1.0, 1e-14);
    EXPECT_EQ(e[k].imag(), 0.0);
  }
  e = cp::eigs_real(from({{0, -1}, {1, 0}}));
  EXPECT_NEAR(e[0].real(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e[0].imag()), 1.0, 1e-14);
  EXPECT_NEAR(e[0].imag(), -e[1].imag(), 1e-14);
  e = cp::eigs_real(from({{2, 1}, {1, 2}}));
  EXPECT_NEAR(e[0].real(), 1.0, 1e-14);
  EXPECT_NEAR(e[1].real(), 3.0, 1e-14);
}

TEST(EigsReal, TraceAndDeterminant) {
  cp::testing::Sampler rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat a = rng.matrix(6, 6);
    std::complex<double> sum = 0.0, prod = 1.0;
    for (const auto& ev : cp::eigs_real(a)) {
      sum += ev;
      prod *= ev;
    }
    EXPECT_NEAR(sum.real(), a.trace(), 1e-11);
    EXPECT_NEAR(sum.imag(), 0.0, 1e-11);
    EXPECT_NEAR(prod.real(), a.determinant(), 1e-10);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(cp::rank_tol(Mat::Identity(4, 4), 1e-10), 4);
  EXPECT_EQ(cp::rank_tol(Mat::Zero(3, 5), 1e-10), 0);
  EXPECT_EQ(cp::rank_tol(from({{1, 2}, {2, 4}, {0, 1e-14}}), 1e-10), 1);
}

TEST(Lyapunov, Residual) {
  cp::testing::Sampler rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat f = rng.matrix(5, 5) - 3 * Mat::Identity(5, 5);
    const Mat w = rng.spd(5);
    const Mat x = cp::solve_lyapunov(f, w);
    EXPECT_LT((f * x + x * f.transpose() - w).norm(), 1e-11);
  }
}

TEST(Care, ScalarStable) {
  const Mat p = cp::solve_care(from({{-1}}), from({{1}}), from({{1}}), from({{1}}));
  EXPECT_NEAR(p(0, 0), std::sqrt(2.0) - 1.0, 1e-12);
}

TEST(Care, ScalarIntegrator) {
  const Mat p = cp::solve_care(from({{0}}), from({{1}}), from({{1}}), from({{1}}));
  EXPECT_NEAR(p(0, 0), 1.0, 1e-12);
}

TEST(Care, UncontrollableUnstableMode) {
  expect_kind([] { cp::solve_care(from({{1}}), from({{0}}), from({{2}}), from({{1}})); },
              cp::ErrorKind::NoStabilizingSeed);
}

TEST(Care, DoubleIntegratorGain) {
  const Mat a = from({{0, 1}, {0, 0}});
  const Mat b = from({{0}, {1}});
  const Mat r = from({{1}});
  const Mat p = cp::solve_care(a, b, Mat::Identity(2, 2), r);
  const Mat k = cp::lqr_gain_from(b, r, p);
  EXPECT_NEAR(k(0, 0), 1.0, 1e-10);
  EXPECT_NEAR(k(0, 1), std::sqrt(3.0), 1e-10);
}

TEST(Care, RejectsIndefiniteR) {
  expect_kind([] { cp::solve_care(from({{0}}), from({{1}}), from({{1}}), from({{-1}})); },
              cp::ErrorKind::NotSPD);
}

TEST(Care, RandomUnstablePlants) {
  cp::testing::Sampler rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat a = 2 * rng.matrix(6, 6);
    const Mat b = rng.matrix(6, 2);
    const Mat q = rng.spd(6);
    const Mat r = rng.spd(2);
    const Mat p = cp::solve_care(a, b, q, r);
    EXPECT_LT(cp::max_abs(cp::care_residual(a, b, q, r, p)), 1e-8 * cp::max_abs(q));
    EXPECT_LT((p - p.transpose()).norm(), 1e-12 * p.norm());
    const Mat k = cp::lqr_gain_from(b, r, p);
    EXPECT_LT(cp::max_real_part(cp::eigs_real(a - b * k)), 0.0);
  }
}
