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

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qclass/machines.hpp"

// Brute-force reference computations on the full qubit Hilbert space. Qubit 0
// is the most significant bit of a basis index; bit value 0 is spin up.
namespace qclass::oracle {

using Matrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

struct DenseOperator {
  enum class Basis { product, coupled };

  Matrix matrix;
  Basis basis = Basis::product;
  std::vector<int> qubits;  // qubits per subsystem, in order
  std::string ordering;     // e.g. "A|B|C"
  bool is_state = false;

  Eigen::Index dimension() const { return matrix.rows(); }
  /// Throws IntegrityError if not Hermitian to 1e-10 (or, for states, not
  /// of unit trace).
  void check() const;
};

/// mt19937_64 with uniform() = (x >> 11) 2^-53.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);
  static constexpr const char* algorithm() { return "mt19937_64"; }

  std::uint64_t seed() const { return seed_; }
  double uniform();
  /// Independent stream for chunk `index`, derived from the seed only.
  RandomSource split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct Qubit {
  Vec2 state;
  Eigen::Vector3d bloch;
};

Qubit qubit_from_bloch(const Eigen::Vector3d& unit);
Qubit haar_qubit(RandomSource& rng);

/// Haar average of 1/2 (1 - r |s0 - s1| / 2) over independent pairs.
struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;
};
Estimate haar_baseline(double r, std::int64_t trials, std::uint64_t seed);

/// Projector onto the symmetric subspace of the qubits listed in `subset`,
/// identity on the other qubits of a `total`-qubit register.
Eigen::MatrixXd symmetric_projector(int total, const std::vector<int>& subset);

/// Integral over Haar psi of (r [psi] + (1 - r) 1/2)^{(x)k}.
Eigen::MatrixXd average_power(int k, double r);

/// sigma_0, sigma_1 on nA + 1 + nC qubits ordered A|B|C.
std::pair<DenseOperator, DenseOperator> build_average_states(int nA, int nC, double r);

/// 1/2 (1 - ||p0 s0 - p1 s1||_1).
double helstrom(const DenseOperator& s0, const DenseOperator& s1, double p0 = 0.5);

double trace_norm(const Matrix& m);

/// tr_B([up] (sigma_0 - sigma_1)) on the nA + nC qubits of A and C.
Matrix gamma_up(int nA, int nC, double r);

/// Isometry (2^k x (2j+1)) onto one copy of spin j in k qubits; columns are
/// |j,m> for m = j .. -j, obtained by lowering a highest-weight vector.
Eigen::MatrixXd irrep_basis(int k, HalfInteger j);

/// Symmetric (Dicke) states |k/2, m>, m = k/2 .. -k/2, as columns.
Eigen::MatrixXd dicke_basis(int k);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// u^{(x)N}.
Matrix tensor_power(const Mat2& u, int N);

/// Rotation exp(-i a Z/2) exp(-i b Y/2) exp(-i g Z/2).
Mat2 rotation(double alpha, double beta, double gamma);

/// Partial transpose of subsystem `which` for a register with the given
/// subsystem dimensions.
Matrix partial_transpose(const Matrix& m, const std::vector<Eigen::Index>& dims, std::size_t which);

struct PptResult {
  double min_eigenvalue_E0 = 0.0;
  double min_eigenvalue_E1 = 0.0;
  double min() const { return std::min(min_eigenvalue_E0, min_eigenvalue_E1); }
};

/// Optimal programmable measurement for pure states: E0 projects on the
/// positive part of sigma_0 - sigma_1 and takes half of its null space inside
/// Sym_A (x) B (x) Sym_C; E1 = 1 - E0. Partial transpose on the data qubit.
PptResult ppt_check(int n);

struct Discretization {
  enum class Kind { quadrature, monte_carlo };
  Kind kind = Kind::quadrature;
  int order_beta = 24;
  int order_alpha = 24;
};

struct SimulationResult {
  double rate = 0.0;
  double stderr_ = 0.0;
  std::int64_t trials = 0;
};

/// Two-stage LM with an m = 0 seed: covariant measurement on the training
/// qubits, then Stern-Gerlach on the data qubit along the outcome. Quadrature
/// integrates the outcome exactly per episode; Monte Carlo samples it.
/// Deterministic in (seed, trials); independent of the thread count.
SimulationResult simulate_lm(int n, const SeedVector& seed_vector, const Discretization& disc,
                             std::uint64_t rng_seed, std::int64_t trials, int threads = 0,
                             const std::optional<Mat2>& global_rotation = std::nullopt);

struct EdFiniteResult {
  double delta = 0.0;
  double error = 0.5;
  bool optimal_form = true;  // every element is c U [psi0] U^dagger
  std::vector<Eigen::Vector3d> bloch0, bloch1;
};

/// POVMs on the symmetric subspace of n qubits (Dicke basis, m descending).
/// Conditional data-qubit Bloch vectors come from tr_A(P_sym(n+1) M / d_{n+1}).
/// Incomplete POVMs throw DomainError; elements not of the optimal-estimation
/// form are accepted and reported through optimal_form.
EdFiniteResult ed_error_finite(const std::vector<Matrix>& M, const std::vector<Matrix>& Mprime, int n);

/// Covariant estimation POVM d_n w_k U_k [psi0] U_k^dagger on a product grid
/// (Gauss-Legendre in cos(beta) x uniform alpha).
std::vector<Matrix> covariant_estimation_povm(int n, int order_beta, int order_alpha);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order);

}  // namespace qclass::oracle
