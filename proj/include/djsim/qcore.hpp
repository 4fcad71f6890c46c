#pragma once

// Linear algebra over the two-atom + single-mode cavity Hilbert space.
//
// Flat index layout: index = ((a1 * 2 + a2) * F + n) with a1, a2 in {0 = g, 1 = e}
// and n the cavity Fock number in [0, F). Atom 1 is the most significant factor,
// so all amplitudes with a fixed atom-1 level are contiguous.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace djsim {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Vector4 = Eigen::Vector4cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kPi = 3.14159265358979323846;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Level : int { g = 0, e = 1 };

class Space {
public:
    explicit Space(int fock_cutoff);

    int fock_cutoff() const { return fock_cutoff_; }
    std::size_t dim() const { return 4 * static_cast<std::size_t>(fock_cutoff_); }

    // Throws std::out_of_range for n outside [0, F).
    std::size_t index(Level a1, Level a2, int n) const;

    bool operator==(const Space&) const = default;

private:
    int fock_cutoff_;
};

Space make_space(int fock_cutoff);

class StateVector {
public:
    StateVector(Space space, Vector amps);

    static StateVector zero(Space space);

    const Space& space() const { return space_; }
    const Vector& amps() const { return amps_; }
    cplx amplitude(Level a1, Level a2, int n) const { return amps_(space_.index(a1, a2, n)); }

    double norm() const { return amps_.norm(); }
    StateVector normalized() const;

private:
    Space space_;
    Vector amps_;
};

class SparseOperator {
public:
    using Matrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

    SparseOperator(Space space, Matrix matrix);

    static SparseOperator zero(Space space);
    static SparseOperator identity(Space space);

    const Space& space() const { return space_; }
    const Matrix& matrix() const { return matrix_; }
    std::size_t nnz() const { return static_cast<std::size_t>(matrix_.nonZeros()); }

    StateVector apply(const StateVector& psi) const;

    SparseOperator adjoint() const;
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }

    // max_ij |op_ij - conj(op_ji)|
    double hermiticity_deviation() const;
    // Upper bound on the spectral norm: sqrt(|op|_1 * |op|_inf).
    double norm_bound() const;

    friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator*(cplx s, const SparseOperator& a);

private:
    Space space_;
    Matrix matrix_;
};

struct MixtureComponent {
    double weight;
    StateVector state;
};

class MixtureState {
public:
    explicit MixtureState(std::vector<MixtureComponent> components);

    static MixtureState pure(StateVector state);

    const Space& space() const { return components_.front().state.space(); }
    std::span<const MixtureComponent> components() const { return components_; }
    std::size_t size() const { return components_.size(); }

private:
    std::vector<MixtureComponent> components_;
};

// Single-atom matrices in the (g, e) basis.
namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
// sigma_z = |e><e| - |g><g|
Mat2 z();
// sigma^+ = |e><g|
Mat2 raise();
// sigma^- = |g><e|
Mat2 lower();
}  // namespace pauli

StateVector basis_state(const Space& space, Level a1, Level a2, int n);

// Atomic amplitudes in (gg, ge, eg, ee) order tensored with the Fock state |n>.
StateVector product_state(const Space& space, const Vector4& atoms, int n);

SparseOperator embed_atom(const Space& space, int which_atom, const Mat2& m);
SparseOperator embed_atoms(const Space& space, const Mat4& m);

SparseOperator annihilation(const Space& space);
SparseOperator creation(const Space& space);
SparseOperator number_operator(const Space& space);

// sigma_x = (sigma_1^+ + sigma_1^- + sigma_2^+ + sigma_2^-) / 2, eigenvalues {-1, 0, 0, 1}.
SparseOperator collective_sigma_x(const Space& space);
Mat4 collective_sigma_x_atomic();

// Applies an atomic 4x4 unitary as U (x) 1_F.
StateVector apply_atomic(const Mat4& u, const StateVector& psi);

double fidelity_pure(const StateVector& a, const StateVector& b);
double fidelity_mixture(const MixtureState& mix, const StateVector& target);

// <T| Tr_cavity(rho) |T> for a two-atom target T.
double atomic_fidelity(const StateVector& psi, const Vector4& target);
double atomic_fidelity(const MixtureState& mix, const Vector4& target);

// Bose-Einstein p_n = nbar^n / (1 + nbar)^(n + 1) for n < count, renormalized.
std::vector<double> thermal_weights(double nbar, int count);

// Smallest component count whose untruncated tail sum_{n >= count} p_n is below tail_tol.
int thermal_component_count(double nbar, double tail_tol);

MixtureState thermal_mixture(const Space& space, const Vector4& atoms, double nbar, int components);

struct OutcomeProbs {
    double p_g;
    double p_e;
};

OutcomeProbs atom1_outcome_probs(const StateVector& state);
OutcomeProbs atom1_outcome_probs(const MixtureState& mix);

// Population of the two highest Fock levels (0 when F <= 2: no level is "above" the physics).
double top_level_population(const StateVector& state);

}  // namespace djsim
