#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "certdel/bitstring.hpp"
#include "certdel/rng.hpp"

namespace certdel::qsim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDensityTol = 1e-10;
inline constexpr std::size_t kMaxDenseQubits = 3;

// Measurement bases available to simulated parties. Computational and
// Hadamard are the two conjugate-coding bases; Intermediate is the basis
// rotated by pi/8, halfway between them.
enum class Basis : std::uint8_t {
    Computational = 0,
    Hadamard = 1,
    Intermediate = 2,
};

// Single-qubit state vector of the conjugate-coding state for (bit, basis 0/1).
CVector bb84_state(int bit, int basis);

// Kronecker product, factor `a` on the most significant index bits.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Validated density matrix of at most kMaxDenseQubits qubits: Hermitian,
// positive semi-definite and unit trace, each within kDensityTol.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix m);

    static DensityMatrix pure(const CVector& psi);

    const CMatrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    std::size_t num_qubits() const { return qubits_; }

private:
    CMatrix m_;
    std::size_t qubits_ = 0;
};

// Half the trace norm of a - b, evaluated through the eigenvalues of the
// Hermitian difference. Accepts any dense complex expressions.
template <typename DerivedA, typename DerivedB>
double trace_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw LengthMismatch("trace_distance: dimension mismatch");
    CMatrix diff = a.derived().template cast<Complex>() - b.derived().template cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return trace_distance(a.matrix(), b.matrix());
}

// Simulated register of qubits. Product mode stores one conjugate-coding
// descriptor per qubit and scales linearly; dense mode stores the full
// density matrix and is capped at kMaxDenseQubits. A register is consumed by
// its first (destructive) measurement.
class Register {
public:
    static Register product(BitString bits, BitString bases);
    static Register dense(DensityMatrix rho);

    std::size_t num_qubits() const { return num_qubits_; }
    bool consumed() const { return consumed_; }
    bool is_dense() const { return rho_.has_value(); }

    friend Register prepare_bb84(const BitString& x, const BitString& theta);
    friend BitString measure(Register& reg, std::span<const Basis> bases, Rng& rng);
    friend DensityMatrix to_density(const Register& reg);

private:
    Register() = default;

    std::size_t num_qubits_ = 0;
    bool consumed_ = false;
    // product mode: per-qubit encoded bit and encoding basis (0/1)
    BitString bits_;
    BitString bases_;
    // dense mode
    std::optional<CMatrix> rho_;
};

// Product-mode register with qubit i holding |x_i> when theta_i = 0 and
// H|x_i> when theta_i = 1.
Register prepare_bb84(const BitString& x, const BitString& theta);

// Destructive per-qubit measurement in the given bases; consumes the
// register and returns the outcome string.
BitString measure(Register& reg, std::span<const Basis> bases, Rng& rng);

// Conjugate-coding measurement: basis bit 0 = computational, 1 = Hadamard.
BitString measure(Register& reg, const BitString& basis, Rng& rng);

// Exact density matrix of the register's state (register stays usable).
DensityMatrix to_density(const Register& reg);

}  // namespace certdel::qsim
