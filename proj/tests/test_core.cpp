#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <vector>

#include "asrga/errors.hpp"
#include "asrga/manifold.hpp"
#include "asrga/matrix_io.hpp"
#include "asrga/numeric.hpp"
#include "asrga/rng.hpp"
#include "asrga/smoothing.hpp"

using namespace asrga;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rng: identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.gaussian() == b.gaussian());
  }
  Rng c(43);
  bool all_equal = true;
  Rng a2(42);
  for (int i = 0; i < 10; ++i) all_equal = all_equal && (a2.uniform() == c.uniform());
  CHECK_FALSE(all_equal);
}

TEST_CASE("rng: uniform range and moments") {
  Rng r(7);
  double sum = 0.0, lo = 1.0, hi = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("rng: gaussian moments") {
  Rng r(11);
  double sum = 0.0, sumsq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double g = r.gaussian();
    sum += g;
    sumsq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sumsq / n - 1.0) < 0.05);
}

TEST_CASE("rng: gaussian_matrix fills column-major") {
  Rng a(5), b(5);
  const Matrix m = a.gaussian_matrix(3, 2);
  for (Eigen::Index j = 0; j < 2; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(m(i, j) == b.gaussian());
}

TEST_CASE("rng: bernoulli frequency") {
  Rng r(13);
  int hits = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) hits += r.bernoulli(0.3) ? 1 : 0;
  CHECK(std::abs(hits / double(n) - 0.3) < 0.02);
}

TEST_CASE("pairwise_sum: small cases and agreement with sequential sum") {
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);
  std::vector<double> v(8);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(pairwise_sum(v) == 36.0);

  Rng r(3);
  std::vector<double> w(1000);
  for (auto& x : w) x = r.gaussian();
  const double seq = std::accumulate(w.begin(), w.end(), 0.0);
  CHECK(pairwise_sum(w) == doctest::Approx(seq).epsilon(1e-13));
}

TEST_CASE("pairwise_sum: fixed association order is deterministic") {
  Rng r(9);
  std::vector<double> v(100001);
  for (auto& x : v) x = r.uniform(-1.0, 1.0);
  const double s1 = pairwise_sum(v);
  const double s2 = pairwise_sum(v);
  CHECK(std::memcmp(&s1, &s2, sizeof s1) == 0);
}

TEST_CASE("matrix_io: header format round-trips bit-exactly") {
  Rng r(17);
  Matrix m = r.gaussian_matrix(7, 3);
  m(0, 0) = 1.0 / 3.0;
  m(1, 0) = 1e-300;
  m(2, 0) = 0.0;
  m(3, 0) = -3.0;
  m(4, 0) = 5e-324;
  const std::string path = temp_path("asrga_io_test.txt");
  write_matrix(path, m);
  const Matrix back = read_matrix(path);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  CHECK(std::memcmp(back.data(), m.data(), sizeof(double) * m.size()) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("matrix_io: text layout is row-major with a dimension header") {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const std::string path = temp_path("asrga_io_layout.txt");
  write_matrix(path, m);
  std::ifstream in(path);
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l1 == "2 3");
  CHECK(l2 == "1 2 3");
  CHECK(l3 == "4 5 6");
  std::filesystem::remove(path);
}

TEST_CASE("matrix_io: csv round-trips bit-exactly") {
  Rng r(19);
  const Matrix m = r.gaussian_matrix(5, 4);
  const std::string path = temp_path("asrga_io_test.csv");
  write_matrix_csv(path, m);
  const Matrix back = read_matrix_csv(path);
  REQUIRE(back.rows() == 5);
  REQUIRE(back.cols() == 4);
  CHECK(std::memcmp(back.data(), m.data(), sizeof(double) * m.size()) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("matrix_io: malformed inputs are rejected") {
  CHECK_THROWS_AS(read_matrix(temp_path("asrga_absent.txt")), ParameterError);
  const std::string trunc = temp_path("asrga_trunc.txt");
  {
    std::ofstream out(trunc);
    out << "2 2\n1 2\n3\n";
  }
  CHECK_THROWS_AS(read_matrix(trunc), ParameterError);
  std::filesystem::remove(trunc);

  const std::string ragged = temp_path("asrga_ragged.csv");
  {
    std::ofstream out(ragged);
    out << "1,2\n3\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(ragged), ParameterError);
  std::filesystem::remove(ragged);
}

TEST_CASE("manifold: spec validation") {
  CHECK_NOTHROW(ManifoldSpec::sphere(2));
  CHECK_THROWS_AS(ManifoldSpec::sphere(1), ParameterError);
  CHECK_NOTHROW(ManifoldSpec::stiefel(6, 3));
  CHECK_NOTHROW(ManifoldSpec::stiefel(2, 2));
  CHECK_THROWS_AS(ManifoldSpec::stiefel(3, 4), ParameterError);
  CHECK_NOTHROW(ManifoldSpec::orthogonal_group(4));
  ManifoldSpec bad = ManifoldSpec::orthogonal_group(4);
  bad.cols = 3;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("manifold: tangent-space dimension") {
  CHECK(Manifold(ManifoldSpec::sphere(5)).dim() == 4);
  CHECK(Manifold(ManifoldSpec::stiefel(6, 3)).dim() == 12);
  CHECK(Manifold(ManifoldSpec::orthogonal_group(4)).dim() == 6);
}

TEST_CASE("manifold: make_point accept / repair / reject") {
  const Manifold m(ManifoldSpec::sphere(3));
  Matrix x(3, 1);
  x << 1.0, 0.0, 0.0;
  const Point p = m.make_point(x);
  CHECK(std::memcmp(p.values().data(), x.data(), sizeof(double) * 3) == 0);

  Matrix near = x * (1.0 + 1e-5);  // residual ~2e-5, repairable
  const Point q = m.make_point(near);
  CHECK(Manifold::orthonormality_residual(q.values()) <= 1e-12);

  CHECK_THROWS_AS(m.make_point(2.0 * x), ParameterError);
  Matrix wrong(2, 1);
  wrong << 1.0, 0.0;
  CHECK_THROWS_AS(m.make_point(wrong), DimensionError);
}

TEST_CASE("manifold: make_tangent validates tangency") {
  const Manifold m(ManifoldSpec::sphere(3));
  Matrix xv(3, 1);
  xv << 1.0, 0.0, 0.0;
  const Point x = m.make_point(xv);
  Matrix d(3, 1);
  d << 0.0, 2.0, -1.0;
  CHECK_NOTHROW(m.make_tangent(x, d));
  Matrix bad(3, 1);
  bad << 1.0, 1.0, 0.0;  // radial component
  CHECK_THROWS_AS(m.make_tangent(x, bad), ParameterError);
}

TEST_CASE("manifold: frozen tangent projection on O^{2,2}") {
  const Manifold m(ManifoldSpec::stiefel(2, 2));
  const Point x = m.make_point(Matrix::Identity(2, 2));
  Matrix d(2, 2);
  d << 0, 1, 0, 0;
  const Tangent t = m.project_tangent(x, d);
  Matrix expect(2, 2);
  expect << 0, 0.5, -0.5, 0;
  CHECK((t.values() - expect).norm() <= 1e-15);
}

TEST_CASE("manifold: frozen sphere retraction") {
  const Manifold m(ManifoldSpec::sphere(2));
  Matrix xv(2, 1);
  xv << 1.0, 0.0;
  const Point x = m.make_point(xv);
  Matrix dv(2, 1);
  dv << 0.0, 1.0;
  const Point y = m.retract(x, m.make_tangent(x, dv));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(y.values()(0) == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(y.values()(1) == doctest::Approx(inv_sqrt2).epsilon(1e-15));
}

TEST_CASE("manifold: projection is idempotent and reduces norm") {
  for (const auto& spec : {ManifoldSpec::sphere(6), ManifoldSpec::stiefel(7, 3),
                           ManifoldSpec::orthogonal_group(4)}) {
    const Manifold m(spec);
    Rng r(91);
    for (int trial = 0; trial < 10; ++trial) {
      const Point x = m.random_point(1000 + trial);
      const Matrix amb = r.gaussian_matrix(spec.rows, spec.cols);
      const Tangent t = m.project_tangent(x, amb);
      CHECK(t.norm() <= amb.norm() + 1e-12);
      const Tangent tt = m.project_tangent(x, t.values());
      CHECK((tt.values() - t.values()).norm() <= 1e-12 * std::max(1.0, t.norm()));
    }
  }
}

TEST_CASE("manifold: retraction feasibility and zero-step identity") {
  for (const auto& spec : {ManifoldSpec::sphere(6), ManifoldSpec::stiefel(7, 3),
                           ManifoldSpec::orthogonal_group(4)}) {
    const Manifold m(spec);
    Rng r(37);
    const Point x = m.random_point(555);
    const Tangent zero = m.make_tangent(x, Matrix::Zero(spec.rows, spec.cols));
    const Point same = m.retract(x, zero);
    CHECK(std::memcmp(same.values().data(), x.values().data(),
                      sizeof(double) * x.values().size()) == 0);
    for (int trial = 0; trial < 10; ++trial) {
      const Tangent t = m.project_tangent(x, r.gaussian_matrix(spec.rows, spec.cols));
      const Point y = m.retract(x, t);
      CHECK(Manifold::orthonormality_residual(y.values()) <= 1e-10);
    }
  }
}

TEST_CASE("manifold: retraction agrees with X + tD to first order") {
  const Manifold m(ManifoldSpec::stiefel(6, 3));
  const Point x = m.random_point(777);
  Rng r(78);
  Tangent d = m.project_tangent(x, r.gaussian_matrix(6, 3));
  d = d.scaled(1.0 / d.norm());
  double prev_ratio = 1e300;
  for (double t : {1e-2, 1e-3, 1e-4}) {
    const Point y = m.retract(x, d.scaled(t));
    const double ratio = (y.values() - x.values() - t * d.values()).norm() / (t * t);
    CHECK(ratio <= 5.0);
    CHECK(ratio <= prev_ratio * 1.5 + 1e-6);
    prev_ratio = ratio;
  }
}

TEST_CASE("manifold: polar factor of an orthonormal matrix is itself") {
  const Manifold m(ManifoldSpec::orthogonal_group(5));
  const Point x = m.random_point(31);
  const Matrix pf = Manifold::polar_factor(x.values());
  CHECK((pf - x.values()).norm() <= 1e-12);
}

TEST_CASE("manifold: qr fallback on rank-deficient input is deterministic") {
  Matrix y(3, 2);
  y << 1, 0, 0, 0, 0, 0;  // second column zero: sigma_min = 0
  bool used1 = false, used2 = false;
  const Matrix q1 = Manifold::polar_or_qr(y, &used1);
  const Matrix q2 = Manifold::polar_or_qr(y, &used2);
  CHECK(used1);
  CHECK(used2);
  CHECK(std::memcmp(q1.data(), q2.data(), sizeof(double) * q1.size()) == 0);
  CHECK(Manifold::orthonormality_residual(q1) <= 1e-12);
  // well-conditioned input does not take the fallback
  Matrix z(3, 2);
  z << 1, 0, 0, 1, 0.3, -0.2;
  bool used3 = true;
  Manifold::polar_or_qr(z, &used3);
  CHECK_FALSE(used3);
}

TEST_CASE("manifold: random_point is deterministic and feasible") {
  for (const auto& spec : {ManifoldSpec::sphere(8), ManifoldSpec::stiefel(9, 4),
                           ManifoldSpec::orthogonal_group(3)}) {
    const Manifold m(spec);
    const Point a = m.random_point(12345);
    const Point b = m.random_point(12345);
    CHECK(std::memcmp(a.values().data(), b.values().data(),
                      sizeof(double) * a.values().size()) == 0);
    CHECK(Manifold::orthonormality_residual(a.values()) <= 1e-12);
    const Point c = m.random_point(12346);
    CHECK((a.values() - c.values()).norm() > 1e-6);
  }
}

TEST_CASE("smoothing: frozen kernel values") {
  CHECK(kernel_value(SmoothingKernel::Abs, 0.0, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(kernel_value(SmoothingKernel::Abs, 2.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(kernel_derivative(SmoothingKernel::Abs, 0.25, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kernel_value(SmoothingKernel::Plus, -10.0, 0.4) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("smoothing: targets") {
  CHECK(kernel_target(SmoothingKernel::Abs, -3.0) == 3.0);
  CHECK(kernel_target(SmoothingKernel::Abs, 3.0) == 3.0);
  CHECK(kernel_target(SmoothingKernel::Plus, -3.0) == 0.0);
  CHECK(kernel_target(SmoothingKernel::Plus, 3.0) == 3.0);
}

TEST_CASE("smoothing: value and derivative are continuous across |t| = mu") {
  for (auto k : {SmoothingKernel::Abs, SmoothingKernel::Plus}) {
    for (double mu : {0.01, 0.3, 1.0}) {
      for (double s : {-1.0, 1.0}) {
        const double t = s * mu;
        const double h = 1e-12;
        CHECK(std::abs(kernel_value(k, t - h, mu) - kernel_value(k, t + h, mu)) <= 1e-10);
        // the derivative's modulus of continuity is L_phi/mu, so the probe gap
        // 2h can move it by up to 2h/mu
        CHECK(std::abs(kernel_derivative(k, t - h, mu) - kernel_derivative(k, t + h, mu)) <=
              3.0 * h / mu);
      }
    }
  }
}

TEST_CASE("smoothing: monotone in mu with kappa-Lipschitz gap") {
  for (auto k : {SmoothingKernel::Abs, SmoothingKernel::Plus}) {
    const double kappa = kernel_constants(k).kappa;
    for (double t : {-2.0, -0.4, 0.0, 0.1, 1.7}) {
      double prev = kernel_value(k, t, 0.05);
      for (double mu : {0.1, 0.2, 0.5, 1.0}) {
        const double cur = kernel_value(k, t, mu);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
      }
      const double gap = kernel_value(k, t, 1.0) - kernel_value(k, t, 0.25);
      CHECK(gap <= kappa * 0.75 + 1e-14);
    }
  }
}

TEST_CASE("smoothing: lower bound sigma*mu and derivative bound M_phi") {
  for (auto k : {SmoothingKernel::Abs, SmoothingKernel::Plus}) {
    const KernelConstants c = kernel_constants(k);
    for (double t = -3.0; t <= 3.0; t += 0.17)
      for (double mu : {0.02, 0.33, 1.0}) {
        CHECK(kernel_value(k, t, mu) >= c.sigma * mu - 1e-15);
        CHECK(std::abs(kernel_derivative(k, t, mu)) <= c.M_phi + 1e-15);
      }
  }
}

TEST_CASE("smoothing: constants") {
  const KernelConstants a = kernel_constants(SmoothingKernel::Abs);
  CHECK(a.sigma == 0.5);
  CHECK(a.kappa == 0.5);
  CHECK(a.M_phi == 1.0);
  CHECK(a.L_phi == 1.0);
  const KernelConstants p = kernel_constants(SmoothingKernel::Plus);
  CHECK(p.sigma == 0.25);
  CHECK(p.kappa == 0.5);
  CHECK(p.M_phi == 1.0);
  CHECK(p.L_phi == 0.5);
}

TEST_CASE("smoothing: invalid mu is rejected") {
  CHECK_THROWS_AS(kernel_value(SmoothingKernel::Abs, 0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(kernel_value(SmoothingKernel::Abs, 0.0, -1.0), ParameterError);
  CHECK_THROWS_AS(kernel_derivative(SmoothingKernel::Plus, 0.0,
                                    std::numeric_limits<double>::quiet_NaN()),
                  ParameterError);
}

TEST_CASE("smoothing: name round-trip") {
  CHECK(kernel_from_string(to_string(SmoothingKernel::Abs)) == SmoothingKernel::Abs);
  CHECK(kernel_from_string(to_string(SmoothingKernel::Plus)) == SmoothingKernel::Plus);
  CHECK_THROWS_AS(kernel_from_string("huber"), ParameterError);
}
