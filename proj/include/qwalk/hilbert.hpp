// Complex state vectors and operators over composite (tensor-product) spaces,
// plus the projective-measurement primitives everything else is built on.

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qwalk {

using cx = std::complex<double>;

// Shared numeric tolerances.
inline constexpr double kNormTol = 1e-10;   // normalization / unitarity / probability checks
inline constexpr double kEntryTol = 1e-12;  // entrywise matrix and state comparisons
inline constexpr double kZeroProb = 1e-12;  // measurement branches at or below this are impossible

// Ordered subsystem dimensions of a composite space.
//
// Flat indexing is row-major: (i0, ..., ik-1) maps to
// i0*(d1*...*dk-1) + i1*(d2*...*dk-1) + ... + ik-1,
// so the last subsystem varies fastest.
class SpaceShape {
public:
    explicit SpaceShape(std::vector<int> dims);

    int rank() const { return static_cast<int>(dims_.size()); }
    int dim(int subsystem) const;
    const std::vector<int>& dims() const { return dims_; }
    int total() const { return total_; }

    int flat_index(std::span<const int> multi) const;
    int flat_index(std::initializer_list<int> multi) const {
        return flat_index(std::span<const int>(multi.begin(), multi.size()));
    }
    std::vector<int> multi_index(int flat) const;

    // Shape with one subsystem removed (what a measurement leaves behind).
    SpaceShape without(int subsystem) const;

    bool operator==(const SpaceShape&) const = default;

private:
    std::vector<int> dims_;
    int total_ = 1;
};

// Complex amplitudes over a composite space. Amplitudes must be finite;
// construction rejects NaN/inf. States are never renormalized implicitly --
// use normalized() explicitly.
class StateVector {
public:
    StateVector(SpaceShape shape, std::vector<cx> amps);

    static StateVector zero(SpaceShape shape);

    const SpaceShape& shape() const { return shape_; }
    int dim() const { return shape_.total(); }
    std::span<const cx> amps() const { return amps_; }
    cx amp(int flat) const;
    void set_amp(int flat, cx value);

    double norm_sq() const;
    double norm() const;
    bool is_normalized(double tol = kNormTol) const;
    StateVector normalized() const;  // throws on (numerically) zero states

    bool operator==(const StateVector&) const = default;

private:
    SpaceShape shape_;
    std::vector<cx> amps_;
};

// Dense complex square matrix over a composite space (domain = codomain).
class OperatorMatrix {
public:
    OperatorMatrix(SpaceShape shape, std::vector<cx> entries);  // row-major, D*D

    static OperatorMatrix zero(SpaceShape shape);
    static OperatorMatrix identity(SpaceShape shape);

    const SpaceShape& shape() const { return shape_; }
    int dim() const { return shape_.total(); }

    cx at(int row, int col) const;
    void set(int row, int col, cx value);
    void add(int row, int col, cx value);

    OperatorMatrix dagger() const;

    // Max-entry norm of M*M^dagger - I.
    double unitarity_defect() const;

    bool operator==(const OperatorMatrix&) const = default;

private:
    SpaceShape shape_;
    std::vector<cx> entries_;
};

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

// Unit vector |i0,...,ik-1> on the given shape.
StateVector basis_state(const SpaceShape& shape, std::span<const int> indices);
StateVector basis_state(const SpaceShape& shape, std::initializer_list<int> indices);

// Kronecker product in list order; result shape is the concatenation of the
// operand shapes. Folded left-to-right, so kron(kron(A,B),C) == kron({A,B,C})
// entry for entry.
OperatorMatrix kron(const std::vector<OperatorMatrix>& ops);

StateVector apply(const OperatorMatrix& op, const StateVector& s);

// Conjugate-linear in the first argument.
cx inner(const StateVector& x, const StateVector& y);

// |<x|y>|^2 for normalized x, y; invariant under global phase of either.
double fidelity(const StateVector& x, const StateVector& y);

struct Projection {
    double probability = 0.0;
    // Renormalized post-measurement state on the remaining subsystems;
    // empty when the branch probability is at or below kZeroProb.
    std::optional<StateVector> residual;
};

// Un-normalized partial inner product <basis_vector|_subsystem s, living on
// the remaining subsystems. The branch probability is its squared norm.
StateVector project_unnormalized(const StateVector& s, int subsystem,
                                 const StateVector& basis_vector);

// Projective measurement of one subsystem onto a normalized basis vector.
Projection project_subsystem(const StateVector& s, int subsystem,
                             const StateVector& basis_vector);

// "|820>" when every dim <= 10, otherwise "|8,2,0>".
std::string ket_label(const SpaceShape& shape, int flat);

}  // namespace qwalk
