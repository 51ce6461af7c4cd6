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

#include "qclass/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include "qclass/errors.hpp"
#include "qclass/su2.hpp"

namespace qclass::oracle {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using cd = std::complex<double>;

constexpr int kMaxQubits = 12;
constexpr double kTol = 1e-10;

void guard_qubits(int total) {
  if (total < 0 || total > kMaxQubits)
    throw DomainError("dense oracle limited to " + std::to_string(kMaxQubits) + " qubits, asked for " +
                      std::to_string(total));
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(su2::log_factorial(n) - su2::log_factorial(k) - su2::log_factorial(n - k)));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Bit of qubit q in an N-qubit index (qubit 0 most significant).
int bit(std::uint64_t x, int q, int N) { return static_cast<int>((x >> (N - 1 - q)) & 1U); }

}  // namespace

void DenseOperator::check() const {
  if (matrix.rows() != matrix.cols()) throw IntegrityError("dense operator is not square");
  if (matrix.size() > 0 && (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kTol)
    throw IntegrityError("dense operator is not Hermitian");
  if (is_state && std::abs(matrix.trace() - cd(1.0, 0.0)) > kTol)
    throw IntegrityError("dense state does not have unit trace");
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

RandomSource RandomSource::split(std::uint64_t index) const {
  return RandomSource(splitmix64(seed_ ^ splitmix64(index + 1)));
}

Qubit qubit_from_bloch(const Eigen::Vector3d& unit) {
  const double z = std::clamp(unit.z(), -1.0, 1.0);
  const double theta = std::acos(z);
  const double phi = std::atan2(unit.y(), unit.x());
  Qubit q;
  q.state << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  q.bloch = unit;
  return q;
}

Qubit haar_qubit(RandomSource& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return qubit_from_bloch(Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z));
}

Estimate haar_baseline(double r, std::int64_t trials, std::uint64_t seed) {
  SpectrumParams{0, r}.validate();
  if (trials < 2) throw DomainError("need at least two trials");
  RandomSource rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const Qubit a = haar_qubit(rng), b = haar_qubit(rng);
    const double e = 0.5 * (1.0 - r * (a.bloch - b.bloch).norm() / 2.0);
    sum += e;
    sum2 += e * e;
  }
  const double T = static_cast<double>(trials);
  const double mean = sum / T;
  return {mean, std::sqrt(std::max(0.0, sum2 / T - mean * mean) / (T - 1.0)), trials};
}

MatrixXd symmetric_projector(int total, const std::vector<int>& subset) {
  guard_qubits(total);
  std::uint64_t mask = 0;
  for (int q : subset) {
    if (q < 0 || q >= total) throw DomainError("qubit index out of range");
    mask |= std::uint64_t{1} << (total - 1 - q);
  }
  const int k = std::popcount(mask);
  const Index dim = Index{1} << total;
  MatrixXd P = MatrixXd::Zero(dim, dim);
  for (Index x = 0; x < dim; ++x) {
    const auto ux = static_cast<std::uint64_t>(x);
    const int w = std::popcount(ux & mask);
    const double v = 1.0 / binomial(k, w);
    for (Index y = 0; y < dim; ++y) {
      const auto uy = static_cast<std::uint64_t>(y);
      if ((ux & ~mask) == (uy & ~mask) && std::popcount(uy & mask) == w) P(x, y) = v;
    }
  }
  return P;
}

MatrixXd average_power(int k, double r) {
  guard_qubits(k);
  SpectrumParams{0, r}.validate();
  const Index dim = Index{1} << k;
  MatrixXd out = MatrixXd::Zero(dim, dim);
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << k); ++S) {
    const int s = std::popcount(S);
    const double coeff = std::pow(r, s) * std::pow((1.0 - r) / 2.0, k - s) / (s + 1.0);
    if (coeff == 0.0) continue;
    std::vector<int> subset;
    for (int q = 0; q < k; ++q)
      if (bit(S, q, k)) subset.push_back(q);
    out += coeff * symmetric_projector(k, subset);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::pair<DenseOperator, DenseOperator> build_average_states(int nA, int nC, double r) {
  if (nA < 0 || nC < 0) throw DomainError("copy numbers must be non-negative");
  guard_qubits(nA + nC + 1);
  const Matrix s0 = kron(average_power(nA + 1, r).cast<cd>(), average_power(nC, r).cast<cd>());
  const Matrix s1 = kron(average_power(nA, r).cast<cd>(), average_power(nC + 1, r).cast<cd>());
  auto make = [&](const Matrix& m) {
    DenseOperator op;
    op.matrix = m;
    op.qubits = {nA, 1, nC};
    op.ordering = "A|B|C";
    op.is_state = true;
    op.check();
    return op;
  };
  return {make(s0), make(s1)};
}

double trace_norm(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double helstrom(const DenseOperator& s0, const DenseOperator& s1, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("priors must lie in [0, 1] and sum to 1");
  if (s0.dimension() != s1.dimension()) throw DomainError("states act on different spaces");
  s0.check();
  s1.check();
  return 0.5 * (1.0 - trace_norm(p0 * s0.matrix - (1.0 - p0) * s1.matrix));
}

Matrix gamma_up(int nA, int nC, double r) {
  const auto [s0, s1] = build_average_states(nA, nC, r);
  const Matrix diff = s0.matrix - s1.matrix;
  const Index dC = Index{1} << nC;
  const Index dAC = (Index{1} << nA) * dC;
  Matrix out(dAC, dAC);
  auto full = [&](Index ac) { return ((ac / dC) * 2) * dC + ac % dC; };  // B = up
  for (Index x = 0; x < dAC; ++x)
    for (Index y = 0; y < dAC; ++y) out(x, y) = diff(full(x), full(y));
  return out;
}

MatrixXd dicke_basis(int k) {
  guard_qubits(k);
  const Index dim = Index{1} << k;
  MatrixXd D = MatrixXd::Zero(dim, k + 1);
  for (Index x = 0; x < dim; ++x) {
    const int pop = std::popcount(static_cast<std::uint64_t>(x));
    D(x, pop) = 1.0 / std::sqrt(binomial(k, pop));
  }
  return D;
}

MatrixXd irrep_basis(int k, HalfInteger j) {
  guard_qubits(k);
  if (j.twice() < 0 || j.twice() > k || (k - j.twice()) % 2 != 0)
    throw DomainError("spin " + j.str() + " does not occur in " + std::to_string(k) + " qubits");
  const Index dim = Index{1} << k;
  // J+ flips one down (1) to up (0); J- the reverse.
  auto raise = [&](const Eigen::VectorXd& v, bool up) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (Index x = 0; x < dim; ++x) {
      if (v(x) == 0.0) continue;
      for (int q = 0; q < k; ++q) {
        const auto ux = static_cast<std::uint64_t>(x);
        const int b = bit(ux, q, k);
        if (up == (b == 1)) out(static_cast<Index>(ux ^ (std::uint64_t{1} << (k - 1 - q)))) += v(x);
      }
    }
    return out;
  };
  const int pop = (k - j.twice()) / 2;
  std::vector<Index> cols, rows;
  for (Index x = 0; x < dim; ++x) {
    const int p = std::popcount(static_cast<std::uint64_t>(x));
    if (p == pop) cols.push_back(x);
    if (p == pop - 1) rows.push_back(x);
  }
  Eigen::VectorXd hw = Eigen::VectorXd::Zero(dim);
  if (rows.empty()) {
    hw(cols.front()) = 1.0;
  } else {
    MatrixXd Jp = MatrixXd::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e(cols[c]) = 1.0;
      const Eigen::VectorXd im = raise(e, true);
      for (std::size_t rr = 0; rr < rows.size(); ++rr) Jp(static_cast<Index>(rr), static_cast<Index>(c)) = im(rows[rr]);
    }
    Eigen::FullPivLU<MatrixXd> lu(Jp);
    const MatrixXd ker = lu.kernel();
    for (std::size_t c = 0; c < cols.size(); ++c) hw(cols[c]) = ker(static_cast<Index>(c), 0);
  }
  MatrixXd V(dim, j.twice() + 1);
  V.col(0) = hw.normalized();
  for (int i = 1; i <= j.twice(); ++i) V.col(i) = raise(V.col(i - 1), false).normalized();
  return V;
}

Matrix tensor_power(const Mat2& u, int N) {
  guard_qubits(N);
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < N; ++i) out = kron(out, u);
  return out;
}

Mat2 rotation(double alpha, double beta, double gamma) {
  auto rz = [](double a) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::polar(1.0, -a / 2.0);
    m(1, 1) = std::polar(1.0, a / 2.0);
    return m;
  };
  Mat2 ry;
  ry << std::cos(beta / 2.0), -std::sin(beta / 2.0), std::sin(beta / 2.0), std::cos(beta / 2.0);
  return rz(alpha) * ry * rz(gamma);
}

Matrix partial_transpose(const Matrix& m, const std::vector<Index>& dims, std::size_t which) {
  Index total = 1;
  for (Index d : dims) total *= d;
  if (m.rows() != total || m.cols() != total || which >= dims.size())
    throw DomainError("partial_transpose: dimensions do not match");
  Index inner = 1;
  for (std::size_t s = which + 1; s < dims.size(); ++s) inner *= dims[s];
  const Index dw = dims[which];
  Matrix out(total, total);
  for (Index x = 0; x < total; ++x) {
    const Index xw = (x / inner) % dw;
    for (Index y = 0; y < total; ++y) {
      const Index yw = (y / inner) % dw;
      const Index x2 = x + (yw - xw) * inner, y2 = y + (xw - yw) * inner;
      out(x2, y2) = m(x, y);
    }
  }
  return out;
}

PptResult ppt_check(int n) {
  if (n < 1) throw DomainError("ppt_check requires n >= 1");
  const auto [s0, s1] = build_average_states(n, n, 1.0);
  const MatrixXd D = dicke_basis(n);
  const Matrix W = kron(kron(D.cast<cd>(), Matrix::Identity(2, 2)), D.cast<cd>());
  const Matrix diff = W.adjoint() * (s0.matrix - s1.matrix) * W;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()));
  const Index dim = diff.rows();
  Eigen::VectorXd w(dim);
  for (Index i = 0; i < dim; ++i) {
    const double l = es.eigenvalues()(i);
    w(i) = l > kTol ? 1.0 : (l < -kTol ? 0.0 : 0.5);
  }
  const Matrix E0 = es.eigenvectors() * w.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
  const Matrix E1 = Matrix::Identity(dim, dim) - E0;
  const std::vector<Index> dims{n + 1, 2, n + 1};
  auto min_eig = [&](const Matrix& E) {
    const Matrix T = partial_transpose(E, dims, 1);
    Eigen::SelfAdjointEigenSolver<Matrix> s(0.5 * (T + T.adjoint()), Eigen::EigenvaluesOnly);
    return s.eigenvalues().minCoeff();
  };
  return {min_eig(E0), min_eig(E1)};
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order) {
  if (order < 1) throw DomainError("quadrature order must be positive");
  std::vector<double> x(static_cast<std::size_t>(order)), w(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

namespace {

// <n/2, m | psi^{(x)n}> for m = n/2 .. -n/2 (k downs).
Eigen::VectorXd sqrt_binomials(int n) {
  Eigen::VectorXd sb(n + 1);
  for (int k = 0; k <= n; ++k) sb(k) = std::sqrt(binomial(n, k));
  return sb;
}

Eigen::VectorXcd coherent(int n, const Vec2& psi, const Eigen::VectorXd& sb) {
  Eigen::VectorXcd c(n + 1);
  cd up = 1.0;
  for (int k = n; k >= 0; --k) {
    c(k) = up;
    up *= psi(0);
  }
  cd down = 1.0;
  for (int k = 0; k <= n; ++k) {
    c(k) *= down * sb(k);
    down *= psi(1);
  }
  return c;
}

struct SimTally {
  double sum = 0.0, sum2 = 0.0;
  std::int64_t count = 0;
};

}  // namespace

SimulationResult simulate_lm(int n, const SeedVector& seed_vector, const Discretization& disc,
                             std::uint64_t rng_seed, std::int64_t trials, int threads,
                             const std::optional<Mat2>& global_rotation) {
  if (n < 1) throw DomainError("simulate_lm requires n >= 1");
  if (seed_vector.n != n || !verify_seed(seed_vector))
    throw DomainError("seed vector fails the completeness check");
  if (trials < 2) throw DomainError("simulate_lm needs at least two trials");
  if (disc.order_beta < 1 || disc.order_alpha < 1) throw DomainError("quadrature orders must be positive");

  // f(mA) = <mA, -mA | phi>, index k = n/2 - mA.
  const HalfInteger jA = HalfInteger::from_twice(n);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n + 1);
  double bound = 0.0;
  for (int k = 0; k <= n; ++k) {
    const HalfInteger m = HalfInteger::from_twice(n - 2 * k);
    for (int j = 0; j <= n; ++j)
      f(k) += seed_vector.coefficients[static_cast<std::size_t>(j)] *
              su2::clebsch_gordan(jA, m, jA, -m, HalfInteger::from_int(j), HalfInteger{});
  }
  for (double c : seed_vector.coefficients) bound += c * c;

  // Density of outcome u (Haar-normalized): |<psi0^n psi1^n| u^{(x)2n} |phi>|^2.
  const Eigen::VectorXd sb = sqrt_binomials(n);
  auto density = [&](const Vec2& p0, const Vec2& p1) {
    const Eigen::VectorXcd c0 = coherent(n, p0, sb), c1 = coherent(n, p1, sb);
    cd amp = 0.0;
    for (int k = 0; k <= n; ++k) amp += f(k) * std::conj(c0(k)) * std::conj(c1(n - k));
    return std::norm(amp);
  };
  auto u_of = [](double cb, double alpha) {
    return rotation(alpha, std::acos(std::clamp(cb, -1.0, 1.0)), 0.0);
  };

  const auto [gx, gw] = gauss_legendre(disc.order_beta);
  std::vector<Mat2> grid_u;
  std::vector<double> grid_w;
  if (disc.kind == Discretization::Kind::quadrature) {
    for (std::size_t b = 0; b < gx.size(); ++b) {
      for (int a = 0; a < disc.order_alpha; ++a) {
        grid_u.push_back(u_of(gx[b], 2.0 * std::numbers::pi * a / disc.order_alpha));
        grid_w.push_back(gw[b] / (2.0 * disc.order_alpha));
      }
    }
  }

  constexpr std::int64_t kChunk = 1024;
  const std::int64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<SimTally> tallies(static_cast<std::size_t>(chunks));
  const RandomSource root(rng_seed);

  auto run_chunk = [&](std::int64_t c) {
    RandomSource rng = root.split(static_cast<std::uint64_t>(c));
    SimTally t;
    const std::int64_t end = std::min(trials, (c + 1) * kChunk);
    for (std::int64_t e = c * kChunk; e < end; ++e) {
      Vec2 psi0 = haar_qubit(rng).state, psi1 = haar_qubit(rng).state;
      if (global_rotation) {
        psi0 = *global_rotation * psi0;
        psi1 = *global_rotation * psi1;
      }
      double err = 0.0;
      if (disc.kind == Discretization::Kind::quadrature) {
        for (std::size_t g = 0; g < grid_u.size(); ++g) {
          const Vec2 a = grid_u[g].adjoint() * psi0, b = grid_u[g].adjoint() * psi1;
          err += grid_w[g] * density(a, b) * 0.5 * (std::norm(a(1)) + std::norm(b(0)));
        }
      } else {
        const bool label1 = rng.uniform() < 0.5;
        Mat2 u;
        Vec2 a, b;
        for (;;) {
          u = u_of(2.0 * rng.uniform() - 1.0, 2.0 * std::numbers::pi * rng.uniform());
          a = u.adjoint() * psi0;
          b = u.adjoint() * psi1;
          if (rng.uniform() * bound < density(a, b)) break;
        }
        const double p_up = std::norm(label1 ? b(0) : a(0));
        const bool says_zero = rng.uniform() < p_up;
        err = (says_zero == label1) ? 1.0 : 0.0;
      }
      t.sum += err;
      t.sum2 += err * err;
      ++t.count;
    }
    tallies[static_cast<std::size_t>(c)] = t;
  };

  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) run_chunk(c);
  };
  unsigned nt = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  nt = std::clamp<unsigned>(nt, 1u, static_cast<unsigned>(std::min<std::int64_t>(chunks, 256)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  double sum = 0.0, sum2 = 0.0;
  for (const auto& t : tallies) {
    sum += t.sum;
    sum2 += t.sum2;
  }
  const double T = static_cast<double>(trials);
  const double mean = sum / T;
  const double var = std::max(0.0, sum2 / T - mean * mean);
  return {mean, std::sqrt(var / (T - 1.0)), trials};
}

namespace {

struct Conditional {
  double p = 0.0;
  Eigen::Vector3d bloch = Eigen::Vector3d::Zero();
  bool optimal_form = false;
};

std::vector<Conditional> conditionals(const std::vector<Matrix>& povm, int n) {
  const Index d = n + 1;
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& M : povm) {
    if (M.rows() != d || M.cols() != d) throw DomainError("POVM element has the wrong dimension");
    sum += M;
  }
  if (povm.empty() || (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw DomainError("POVM is not complete on the symmetric subspace");

  const Matrix D = dicke_basis(n).cast<cd>();
  const Matrix P = symmetric_projector(n + 1, [&] {
                     std::vector<int> all;
                     for (int q = 0; q <= n; ++q) all.push_back(q);
                     return all;
                   }()).cast<cd>();
  // Spin operators on the Dicke basis (m descending).
  Matrix Jz = Matrix::Zero(d, d), Jp = Matrix::Zero(d, d);
  const double j = 0.5 * n;
  for (Index k = 0; k < d; ++k) {
    const double m = j - static_cast<double>(k);
    Jz(k, k) = m;
    if (k > 0) Jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const Matrix Jx = 0.5 * (Jp + Jp.adjoint());
  const Matrix Jy = cd(0.0, -0.5) * (Jp - Jp.adjoint());

  std::vector<Conditional> out;
  for (const auto& M : povm) {
    Conditional c;
    c.p = M.trace().real() / static_cast<double>(d);
    const Matrix X = P * kron(D * M * D.adjoint(), Matrix::Identity(2, 2)) / static_cast<double>(n + 2);
    // Trace out A (the first n qubits).
    Mat2 rho = Mat2::Zero();
    const Index dA = Index{1} << n;
    for (Index a = 0; a < dA; ++a)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) rho(b1, b2) += X(2 * a + b1, 2 * a + b2);
    const double tr = rho.trace().real();
    if (tr > 1e-300) {
      rho /= tr;
      c.bloch = Eigen::Vector3d(2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.adjoint()));
    const auto& ev = es.eigenvalues();
    const double top = ev(d - 1);
    if (top > 0.0 && (d == 1 || ev(d - 2) <= 1e-9 * top) && ev(0) >= -1e-9 * top) {
      const Eigen::VectorXcd v = es.eigenvectors().col(d - 1);
      const Eigen::Vector3d J((v.adjoint() * Jx * v)(0).real(), (v.adjoint() * Jy * v)(0).real(),
                              (v.adjoint() * Jz * v)(0).real());
      c.optimal_form = std::abs(J.norm() - j) <= 1e-9;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

EdFiniteResult ed_error_finite(const std::vector<Matrix>& M, const std::vector<Matrix>& Mprime, int n) {
  if (n < 1) throw DomainError("ed_error_finite requires n >= 1");
  guard_qubits(n + 1);
  const auto c0 = conditionals(M, n), c1 = conditionals(Mprime, n);
  EdFiniteResult res;
  for (const auto& a : c0) {
    res.optimal_form = res.optimal_form && a.optimal_form;
    res.bloch0.push_back(a.bloch);
  }
  for (const auto& b : c1) {
    res.optimal_form = res.optimal_form && b.optimal_form;
    res.bloch1.push_back(b.bloch);
  }
  for (const auto& a : c0)
    for (const auto& b : c1) res.delta += a.p * b.p * (a.bloch - b.bloch).norm();
  res.error = 0.5 * (1.0 - 0.5 * res.delta);
  return res;
}

std::vector<Matrix> covariant_estimation_povm(int n, int order_beta, int order_alpha) {
  if (n < 1 || order_alpha < 1) throw DomainError("covariant_estimation_povm: bad arguments");
  const auto [x, w] = gauss_legendre(order_beta);
  const Eigen::VectorXd sb = sqrt_binomials(n);
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < x.size(); ++b) {
    const double beta = std::acos(x[b]);
    for (int a = 0; a < order_alpha; ++a) {
      const double alpha = 2.0 * std::numbers::pi * a / order_alpha;
      Vec2 psi;
      psi << std::cos(beta / 2.0), std::polar(std::sin(beta / 2.0), alpha);
      const Eigen::VectorXcd c = coherent(n, psi, sb);
      out.push_back((n + 1.0) * w[b] / (2.0 * order_alpha) * c * c.adjoint());
    }
  }
  return out;
}

}  // namespace qclass::oracle
