#include "certdel/qsim.hpp"

#include <cmath>

namespace certdel::qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Basis change U mapping the measurement basis onto the computational one;
// measuring in basis B equals measuring U rho U^dagger computationally.
Eigen::Matrix2cd basis_rotation(Basis b) {
    Eigen::Matrix2cd u;
    switch (b) {
        case Basis::Computational:
            u << 1, 0, 0, 1;
            break;
        case Basis::Hadamard:
            u << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
            break;
        case Basis::Intermediate: {
            double c = std::cos(M_PI / 8), s = std::sin(M_PI / 8);
            u << c, s, -s, c;
            break;
        }
    }
    return u;
}

// P(outcome 0) for a single conjugate-coding qubit measured in basis `meas`.
double prob_outcome_zero(int bit, int enc_basis, Basis meas) {
    CVector psi = bb84_state(bit, enc_basis);
    Eigen::Matrix2cd u = basis_rotation(meas);
    Complex amp = u(0, 0) * psi(0) + u(0, 1) * psi(1);
    return std::norm(amp);
}

}  // namespace

CVector bb84_state(int bit, int basis) {
    CVector psi(2);
    if (basis == 0) {
        psi << (bit == 0 ? 1.0 : 0.0), (bit == 0 ? 0.0 : 1.0);
    } else {
        psi << kInvSqrt2, (bit == 0 ? kInvSqrt2 : -kInvSqrt2);
    }
    return psi;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw ParamError("density matrix must be square");
    Eigen::Index d = m_.rows();
    std::size_t k = 0;
    while ((Eigen::Index(1) << k) < d) ++k;
    if ((Eigen::Index(1) << k) != d || k > kMaxDenseQubits)
        throw ParamError("density matrix dimension must be 2^k with k <= 3");
    qubits_ = k;
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kDensityTol)
        throw ParamError("density matrix not Hermitian within tolerance");
    if (std::abs(m_.trace().real() - 1.0) > kDensityTol || std::abs(m_.trace().imag()) > kDensityTol)
        throw ParamError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kDensityTol)
        throw ParamError("density matrix not positive semi-definite within tolerance");
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    return DensityMatrix(psi * psi.adjoint());
}

Register Register::product(BitString bits, BitString bases) {
    if (bits.size() != bases.size()) throw LengthMismatch("bit and basis strings differ in length");
    if (bits.empty()) throw ParamError("register needs at least one qubit");
    Register reg;
    reg.num_qubits_ = bits.size();
    reg.bits_ = std::move(bits);
    reg.bases_ = std::move(bases);
    return reg;
}

Register Register::dense(DensityMatrix rho) {
    Register reg;
    reg.num_qubits_ = rho.num_qubits();
    reg.rho_ = rho.matrix();
    return reg;
}

Register prepare_bb84(const BitString& x, const BitString& theta) {
    return Register::product(x, theta);
}

BitString measure(Register& reg, std::span<const Basis> bases, Rng& rng) {
    if (reg.consumed_) throw RegisterConsumed();
    if (bases.size() != reg.num_qubits_) throw LengthMismatch("basis string length differs from register size");
    reg.consumed_ = true;

    BitString outcome(reg.num_qubits_);
    if (!reg.rho_) {
        for (std::size_t i = 0; i < reg.num_qubits_; ++i) {
            double p0 = prob_outcome_zero(reg.bits_[i], reg.bases_[i], bases[i]);
            // matched-basis qubits are deterministic; avoid burning randomness
            int out;
            if (p0 >= 1.0 - 1e-12)
                out = 0;
            else if (p0 <= 1e-12)
                out = 1;
            else
                out = rng.uniform() < p0 ? 0 : 1;
            outcome.set(i, out);
        }
        return outcome;
    }

    // dense mode: rotate each qubit into its measurement basis, then sample
    // one basis state from the diagonal
    CMatrix rho = *reg.rho_;
    Eigen::Index dim = rho.rows();
    CMatrix u = CMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < reg.num_qubits_; ++i) u = kron(u, CMatrix(basis_rotation(bases[i])));
    rho = u * rho * u.adjoint();

    double r = rng.uniform();
    double acc = 0;
    Eigen::Index picked = dim - 1;
    for (Eigen::Index s = 0; s < dim; ++s) {
        acc += std::max(0.0, rho(s, s).real());
        if (r < acc) {
            picked = s;
            break;
        }
    }
    for (std::size_t i = 0; i < reg.num_qubits_; ++i)
        outcome.set(i, static_cast<int>((picked >> (reg.num_qubits_ - 1 - i)) & 1));
    return outcome;
}

BitString measure(Register& reg, const BitString& basis, Rng& rng) {
    std::vector<Basis> bases(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        bases[i] = basis[i] ? Basis::Hadamard : Basis::Computational;
    return measure(reg, bases, rng);
}

DensityMatrix to_density(const Register& reg) {
    if (reg.num_qubits() > kMaxDenseQubits) throw ParamError("register too large for dense mode");
    if (reg.rho_) return DensityMatrix(*reg.rho_);
    CMatrix rho = CMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < reg.num_qubits_; ++i) {
        CVector psi = bb84_state(reg.bits_[i], reg.bases_[i]);
        rho = kron(rho, CMatrix(psi * psi.adjoint()));
    }
    return DensityMatrix(std::move(rho));
}

}  // namespace certdel::qsim
