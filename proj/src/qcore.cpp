#include "djsim/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace djsim {

namespace {

using Triplet = Eigen::Triplet<cplx>;

void require_same_space(const Space& a, const Space& b, const char* what) {
    if (!(a == b)) {
        throw DimensionMismatch(std::string(what) + ": operands live in different spaces (F=" +
                                std::to_string(a.fock_cutoff()) + " vs F=" +
                                std::to_string(b.fock_cutoff()) + ")");
    }
}

int checked_atom(int which_atom) {
    if (which_atom != 1 && which_atom != 2) {
        throw std::invalid_argument("atom index must be 1 or 2, got " + std::to_string(which_atom));
    }
    return which_atom;
}

SparseOperator from_triplets(const Space& space, const std::vector<Triplet>& triplets) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    SparseOperator::Matrix m(d, d);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune(cplx(0.0, 0.0));
    m.makeCompressed();
    return SparseOperator(space, std::move(m));
}

// Cavity-only operator given by its nonzero (row, col, value) entries on the Fock factor.
template <typename Entry>
SparseOperator cavity_operator(const Space& space, Entry entry) {
    const int f = space.fock_cutoff();
    std::vector<Triplet> triplets;
    triplets.reserve(4 * static_cast<std::size_t>(f));
    for (int atoms = 0; atoms < 4; ++atoms) {
        const auto base = static_cast<Eigen::Index>(atoms) * f;
        for (int n = 0; n < f; ++n) {
            entry(n, [&](int row, cplx v) { triplets.emplace_back(base + row, base + n, v); });
        }
    }
    return from_triplets(space, triplets);
}

}  // namespace

// ---------------------------------------------------------------- Space

Space::Space(int fock_cutoff) : fock_cutoff_(fock_cutoff) {
    if (fock_cutoff < 1) {
        throw std::invalid_argument("fock_cutoff must be >= 1, got " + std::to_string(fock_cutoff));
    }
}

std::size_t Space::index(Level a1, Level a2, int n) const {
    if (n < 0 || n >= fock_cutoff_) {
        throw std::out_of_range("Fock number " + std::to_string(n) + " outside [0, " +
                                std::to_string(fock_cutoff_) + ")");
    }
    const auto atoms = static_cast<std::size_t>(static_cast<int>(a1) * 2 + static_cast<int>(a2));
    return atoms * static_cast<std::size_t>(fock_cutoff_) + static_cast<std::size_t>(n);
}

Space make_space(int fock_cutoff) { return Space(fock_cutoff); }

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(Space space, Vector amps) : space_(space), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != space_.dim()) {
        throw DimensionMismatch("state has " + std::to_string(amps_.size()) +
                                " amplitudes, space needs " + std::to_string(space_.dim()));
    }
}

StateVector StateVector::zero(Space space) {
    return StateVector(space, Vector::Zero(static_cast<Eigen::Index>(space.dim())));
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    return StateVector(space_, amps_ / n);
}

// ---------------------------------------------------------------- SparseOperator

SparseOperator::SparseOperator(Space space, Matrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(space_.dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw DimensionMismatch("operator shape does not match space dimension");
    }
    matrix_.makeCompressed();
}

SparseOperator SparseOperator::zero(Space space) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    return SparseOperator(space, Matrix(d, d));
}

SparseOperator SparseOperator::identity(Space space) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    Matrix m(d, d);
    m.setIdentity();
    return SparseOperator(space, std::move(m));
}

StateVector SparseOperator::apply(const StateVector& psi) const {
    require_same_space(space_, psi.space(), "apply");
    Vector out = matrix_ * psi.amps();
    return StateVector(space_, std::move(out));
}

SparseOperator SparseOperator::adjoint() const {
    Matrix m = matrix_.adjoint();
    return SparseOperator(space_, std::move(m));
}

double SparseOperator::hermiticity_deviation() const {
    Matrix diff = matrix_ - Matrix(matrix_.adjoint());
    double worst = 0.0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
        for (Matrix::InnerIterator it(diff, k); it; ++it) {
            worst = std::max(worst, std::abs(it.value()));
        }
    }
    return worst;
}

double SparseOperator::norm_bound() const {
    const auto d = static_cast<std::size_t>(matrix_.rows());
    std::vector<double> row(d, 0.0);
    std::vector<double> col(d, 0.0);
    for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
        for (Matrix::InnerIterator it(matrix_, k); it; ++it) {
            const double a = std::abs(it.value());
            row[static_cast<std::size_t>(it.row())] += a;
            col[static_cast<std::size_t>(it.col())] += a;
        }
    }
    const double inf_norm = row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
    const double one_norm = col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
    return std::sqrt(inf_norm * one_norm);
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    require_same_space(a.space_, b.space_, "operator+");
    SparseOperator::Matrix m = a.matrix_ + b.matrix_;
    return SparseOperator(a.space_, std::move(m));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
    require_same_space(a.space_, b.space_, "operator-");
    SparseOperator::Matrix m = a.matrix_ - b.matrix_;
    return SparseOperator(a.space_, std::move(m));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    require_same_space(a.space_, b.space_, "operator*");
    SparseOperator::Matrix m = a.matrix_ * b.matrix_;
    m.prune(cplx(0.0, 0.0));
    return SparseOperator(a.space_, std::move(m));
}

SparseOperator operator*(cplx s, const SparseOperator& a) {
    SparseOperator::Matrix m = s * a.matrix_;
    return SparseOperator(a.space_, std::move(m));
}

// ---------------------------------------------------------------- MixtureState

MixtureState::MixtureState(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("mixture needs at least one component");
    }
    double total = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight >= 0.0)) {
            throw std::invalid_argument("mixture weights must be >= 0");
        }
        require_same_space(components_.front().state.space(), c.state.space(), "mixture");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("mixture weights sum to " + std::to_string(total) + ", not 1");
    }
}

MixtureState MixtureState::pure(StateVector state) {
    std::vector<MixtureComponent> c;
    c.push_back({1.0, std::move(state)});
    return MixtureState(std::move(c));
}

// ---------------------------------------------------------------- Pauli

namespace pauli {

Mat2 identity() { return Mat2::Identity(); }

Mat2 x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

Mat2 y() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat2 z() {
    Mat2 m;
    m << -1, 0, 0, 1;
    return m;
}

Mat2 raise() {
    Mat2 m;
    m << 0, 0, 1, 0;
    return m;
}

Mat2 lower() {
    Mat2 m;
    m << 0, 1, 0, 0;
    return m;
}

}  // namespace pauli

// ---------------------------------------------------------------- builders

StateVector basis_state(const Space& space, Level a1, Level a2, int n) {
    auto psi = Vector::Zero(static_cast<Eigen::Index>(space.dim())).eval();
    psi(static_cast<Eigen::Index>(space.index(a1, a2, n))) = 1.0;
    return StateVector(space, std::move(psi));
}

StateVector product_state(const Space& space, const Vector4& atoms, int n) {
    auto psi = Vector::Zero(static_cast<Eigen::Index>(space.dim())).eval();
    for (int a = 0; a < 4; ++a) {
        psi(static_cast<Eigen::Index>(space.index(Level(a / 2), Level(a % 2), n))) = atoms(a);
    }
    return StateVector(space, std::move(psi));
}

SparseOperator embed_atoms(const Space& space, const Mat4& m) {
    const int f = space.fock_cutoff();
    std::vector<Triplet> triplets;
    triplets.reserve(16 * static_cast<std::size_t>(f));
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (m(r, c) == cplx(0.0, 0.0)) {
                continue;
            }
            for (int n = 0; n < f; ++n) {
                triplets.emplace_back(r * f + n, c * f + n, m(r, c));
            }
        }
    }
    return from_triplets(space, triplets);
}

SparseOperator embed_atom(const Space& space, int which_atom, const Mat2& m) {
    const Mat2 id = Mat2::Identity();
    const Mat2& first = checked_atom(which_atom) == 1 ? m : id;
    const Mat2& second = which_atom == 2 ? m : id;
    Mat4 k;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            k(r, c) = first(r / 2, c / 2) * second(r % 2, c % 2);
        }
    }
    return embed_atoms(space, k);
}

SparseOperator annihilation(const Space& space) {
    return cavity_operator(space, [](int n, auto&& put) {
        if (n > 0) {
            put(n - 1, cplx(std::sqrt(static_cast<double>(n)), 0.0));
        }
    });
}

SparseOperator creation(const Space& space) {
    const int f = space.fock_cutoff();
    return cavity_operator(space, [f](int n, auto&& put) {
        if (n + 1 < f) {
            put(n + 1, cplx(std::sqrt(static_cast<double>(n + 1)), 0.0));
        }
    });
}

SparseOperator number_operator(const Space& space) {
    return cavity_operator(space, [](int n, auto&& put) {
        if (n > 0) {
            put(n, cplx(static_cast<double>(n), 0.0));
        }
    });
}

Mat4 collective_sigma_x_atomic() {
    Mat4 k = Mat4::Zero();
    const Mat2 x = pauli::x();
    const Mat2 id = Mat2::Identity();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            k(r, c) = 0.5 * (x(r / 2, c / 2) * id(r % 2, c % 2) + id(r / 2, c / 2) * x(r % 2, c % 2));
        }
    }
    return k;
}

SparseOperator collective_sigma_x(const Space& space) {
    return embed_atoms(space, collective_sigma_x_atomic());
}

StateVector apply_atomic(const Mat4& u, const StateVector& psi) {
    const int f = psi.space().fock_cutoff();
    // Column-major view: column n holds the four atomic amplitudes for Fock level n.
    Eigen::Map<const Eigen::MatrixXcd> blocks(psi.amps().data(), f, 4);
    Eigen::MatrixXcd out = blocks * u.transpose();
    return StateVector(psi.space(), Eigen::Map<Vector>(out.data(), out.size()));
}

// ---------------------------------------------------------------- metrics

double fidelity_pure(const StateVector& a, const StateVector& b) {
    require_same_space(a.space(), b.space(), "fidelity_pure");
    return std::norm(a.amps().dot(b.amps()));
}

double fidelity_mixture(const MixtureState& mix, const StateVector& target) {
    double f = 0.0;
    for (const auto& c : mix.components()) {
        f += c.weight * fidelity_pure(target, c.state);
    }
    return f;
}

double atomic_fidelity(const StateVector& psi, const Vector4& target) {
    const int f = psi.space().fock_cutoff();
    Eigen::Map<const Eigen::MatrixXcd> blocks(psi.amps().data(), f, 4);
    // Row n of (blocks * conj(target)) is <T|psi_n> for the cavity component n.
    const Vector overlaps = blocks * target.conjugate();
    return overlaps.squaredNorm();
}

double atomic_fidelity(const MixtureState& mix, const Vector4& target) {
    double f = 0.0;
    for (const auto& c : mix.components()) {
        f += c.weight * atomic_fidelity(c.state, target);
    }
    return f;
}

std::vector<double> thermal_weights(double nbar, int count) {
    if (!(nbar >= 0.0)) {
        throw std::invalid_argument("nbar must be >= 0");
    }
    if (count < 1) {
        throw std::invalid_argument("thermal weight count must be >= 1");
    }
    std::vector<double> p(static_cast<std::size_t>(count));
    const double ratio = nbar / (1.0 + nbar);
    double term = 1.0 / (1.0 + nbar);
    for (auto& v : p) {
        v = term;
        term *= ratio;
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) {
        v /= total;
    }
    return p;
}

int thermal_component_count(double nbar, double tail_tol) {
    if (!(nbar >= 0.0)) {
        throw std::invalid_argument("nbar must be >= 0");
    }
    // Tail of the geometric distribution: sum_{n >= K} p_n = (nbar / (1 + nbar))^K.
    const double ratio = nbar / (1.0 + nbar);
    int k = 1;
    double tail = ratio;
    while (tail >= tail_tol) {
        tail *= ratio;
        ++k;
    }
    return k;
}

MixtureState thermal_mixture(const Space& space, const Vector4& atoms, double nbar,
                             int components) {
    if (components > space.fock_cutoff()) {
        throw std::invalid_argument("thermal mixture has more components than Fock levels");
    }
    const auto w = thermal_weights(nbar, components);
    std::vector<MixtureComponent> c;
    c.reserve(w.size());
    for (int n = 0; n < components; ++n) {
        c.push_back({w[static_cast<std::size_t>(n)], product_state(space, atoms, n)});
    }
    return MixtureState(std::move(c));
}

OutcomeProbs atom1_outcome_probs(const StateVector& state) {
    const auto half = static_cast<Eigen::Index>(state.space().dim() / 2);
    const double pg = state.amps().head(half).squaredNorm();
    const double pe = state.amps().tail(half).squaredNorm();
    const double total = pg + pe;
    return {pg / total, pe / total};
}

OutcomeProbs atom1_outcome_probs(const MixtureState& mix) {
    OutcomeProbs out{0.0, 0.0};
    for (const auto& c : mix.components()) {
        const auto p = atom1_outcome_probs(c.state);
        out.p_g += c.weight * p.p_g;
        out.p_e += c.weight * p.p_e;
    }
    return out;
}

double top_level_population(const StateVector& state) {
    const int f = state.space().fock_cutoff();
    if (f <= 2) {
        return 0.0;
    }
    double pop = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int n = f - 2; n < f; ++n) {
            pop += std::norm(state.amps()(a * f + n));
        }
    }
    return pop;
}

}  // namespace djsim
