#include "qwalk/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

void require_finite(cx value, const char* what) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw std::invalid_argument(std::string(what) + ": non-finite complex value");
    }
}

}  // namespace

SpaceShape::SpaceShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw std::invalid_argument("SpaceShape: at least one subsystem required");
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] < 1) {
            throw std::invalid_argument("SpaceShape: subsystem " + std::to_string(i) +
                                        " has non-positive dimension " + std::to_string(dims_[i]));
        }
        total_ *= dims_[i];
    }
}

int SpaceShape::dim(int subsystem) const {
    if (subsystem < 0 || subsystem >= rank()) {
        throw std::out_of_range("SpaceShape: subsystem " + std::to_string(subsystem) +
                                " out of range (rank " + std::to_string(rank()) + ")");
    }
    return dims_[static_cast<std::size_t>(subsystem)];
}

int SpaceShape::flat_index(std::span<const int> multi) const {
    if (static_cast<int>(multi.size()) != rank()) {
        throw std::invalid_argument("SpaceShape: multi-index rank " + std::to_string(multi.size()) +
                                    " does not match shape rank " + std::to_string(rank()));
    }
    int flat = 0;
    for (int i = 0; i < rank(); ++i) {
        const int idx = multi[static_cast<std::size_t>(i)];
        const int d = dims_[static_cast<std::size_t>(i)];
        if (idx < 0 || idx >= d) {
            throw std::out_of_range("SpaceShape: index " + std::to_string(idx) +
                                    " out of range for subsystem " + std::to_string(i) +
                                    " (dim " + std::to_string(d) + ")");
        }
        flat = flat * d + idx;
    }
    return flat;
}

std::vector<int> SpaceShape::multi_index(int flat) const {
    if (flat < 0 || flat >= total_) {
        throw std::out_of_range("SpaceShape: flat index " + std::to_string(flat) +
                                " out of range (total " + std::to_string(total_) + ")");
    }
    std::vector<int> multi(static_cast<std::size_t>(rank()));
    for (int i = rank() - 1; i >= 0; --i) {
        const int d = dims_[static_cast<std::size_t>(i)];
        multi[static_cast<std::size_t>(i)] = flat % d;
        flat /= d;
    }
    return multi;
}

SpaceShape SpaceShape::without(int subsystem) const {
    dim(subsystem);  // bounds check
    if (rank() < 2) {
        throw std::invalid_argument("SpaceShape: cannot remove the only subsystem");
    }
    std::vector<int> rest = dims_;
    rest.erase(rest.begin() + subsystem);
    return SpaceShape(std::move(rest));
}

StateVector::StateVector(SpaceShape shape, std::vector<cx> amps)
    : shape_(std::move(shape)), amps_(std::move(amps)) {
    if (static_cast<int>(amps_.size()) != shape_.total()) {
        throw std::invalid_argument("StateVector: amplitude count " + std::to_string(amps_.size()) +
                                    " does not match shape total " + std::to_string(shape_.total()));
    }
    for (const cx& a : amps_) {
        require_finite(a, "StateVector");
    }
}

StateVector StateVector::zero(SpaceShape shape) {
    const int total = shape.total();
    return StateVector(std::move(shape), std::vector<cx>(static_cast<std::size_t>(total)));
}

cx StateVector::amp(int flat) const {
    if (flat < 0 || flat >= dim()) {
        throw std::out_of_range("StateVector: flat index out of range");
    }
    return amps_[static_cast<std::size_t>(flat)];
}

void StateVector::set_amp(int flat, cx value) {
    if (flat < 0 || flat >= dim()) {
        throw std::out_of_range("StateVector: flat index out of range");
    }
    require_finite(value, "StateVector");
    amps_[static_cast<std::size_t>(flat)] = value;
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const cx& a : amps_) s += std::norm(a);
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n2 = norm_sq();
    if (n2 <= kZeroProb) {
        throw std::domain_error("StateVector: cannot normalize a zero state");
    }
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<cx> scaled = amps_;
    for (cx& a : scaled) a *= inv;
    return StateVector(shape_, std::move(scaled));
}

OperatorMatrix::OperatorMatrix(SpaceShape shape, std::vector<cx> entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
    const std::size_t d = static_cast<std::size_t>(shape_.total());
    if (entries_.size() != d * d) {
        throw std::invalid_argument("OperatorMatrix: entry count " + std::to_string(entries_.size()) +
                                    " does not match dimension " + std::to_string(d) + "x" +
                                    std::to_string(d));
    }
    for (const cx& e : entries_) {
        require_finite(e, "OperatorMatrix");
    }
}

OperatorMatrix OperatorMatrix::zero(SpaceShape shape) {
    const std::size_t d = static_cast<std::size_t>(shape.total());
    return OperatorMatrix(std::move(shape), std::vector<cx>(d * d));
}

OperatorMatrix OperatorMatrix::identity(SpaceShape shape) {
    OperatorMatrix m = zero(std::move(shape));
    for (int i = 0; i < m.dim(); ++i) m.set(i, i, cx{1.0, 0.0});
    return m;
}

cx OperatorMatrix::at(int row, int col) const {
    if (row < 0 || row >= dim() || col < 0 || col >= dim()) {
        throw std::out_of_range("OperatorMatrix: entry index out of range");
    }
    return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(dim()) +
                    static_cast<std::size_t>(col)];
}

void OperatorMatrix::set(int row, int col, cx value) {
    if (row < 0 || row >= dim() || col < 0 || col >= dim()) {
        throw std::out_of_range("OperatorMatrix: entry index out of range");
    }
    require_finite(value, "OperatorMatrix");
    entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(dim()) +
             static_cast<std::size_t>(col)] = value;
}

void OperatorMatrix::add(int row, int col, cx value) { set(row, col, at(row, col) + value); }

OperatorMatrix OperatorMatrix::dagger() const {
    OperatorMatrix out = zero(shape_);
    for (int r = 0; r < dim(); ++r) {
        for (int c = 0; c < dim(); ++c) {
            out.set(c, r, std::conj(at(r, c)));
        }
    }
    return out;
}

double OperatorMatrix::unitarity_defect() const {
    const OperatorMatrix prod = *this * dagger();
    double worst = 0.0;
    for (int r = 0; r < dim(); ++r) {
        for (int c = 0; c < dim(); ++c) {
            const cx want = (r == c) ? cx{1.0, 0.0} : cx{0.0, 0.0};
            worst = std::max(worst, std::abs(prod.at(r, c) - want));
        }
    }
    return worst;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    if (lhs.shape() != rhs.shape()) {
        throw std::invalid_argument("OperatorMatrix: product of mismatched shapes");
    }
    const int d = lhs.dim();
    OperatorMatrix out = OperatorMatrix::zero(lhs.shape());
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k < d; ++k) {
            const cx l = lhs.at(r, k);
            if (l == cx{0.0, 0.0}) continue;
            for (int c = 0; c < d; ++c) {
                out.add(r, c, l * rhs.at(k, c));
            }
        }
    }
    return out;
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.shape() != b.shape()) {
        throw std::invalid_argument("max_abs_diff: mismatched shapes");
    }
    double worst = 0.0;
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) {
            worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
        }
    }
    return worst;
}

StateVector basis_state(const SpaceShape& shape, std::span<const int> indices) {
    StateVector s = StateVector::zero(shape);
    s.set_amp(shape.flat_index(indices), cx{1.0, 0.0});
    return s;
}

StateVector basis_state(const SpaceShape& shape, std::initializer_list<int> indices) {
    return basis_state(shape, std::span<const int>(indices.begin(), indices.size()));
}

namespace {

OperatorMatrix kron2(const OperatorMatrix& a, const OperatorMatrix& b) {
    std::vector<int> dims = a.shape().dims();
    dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
    OperatorMatrix out = OperatorMatrix::zero(SpaceShape(std::move(dims)));
    const int da = a.dim();
    const int db = b.dim();
    for (int ra = 0; ra < da; ++ra) {
        for (int ca = 0; ca < da; ++ca) {
            const cx va = a.at(ra, ca);
            if (va == cx{0.0, 0.0}) continue;
            for (int rb = 0; rb < db; ++rb) {
                for (int cb = 0; cb < db; ++cb) {
                    const cx vb = b.at(rb, cb);
                    if (vb == cx{0.0, 0.0}) continue;
                    out.set(ra * db + rb, ca * db + cb, va * vb);
                }
            }
        }
    }
    return out;
}

}  // namespace

OperatorMatrix kron(const std::vector<OperatorMatrix>& ops) {
    if (ops.empty()) {
        throw std::invalid_argument("kron: empty operator list");
    }
    OperatorMatrix out = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i) {
        out = kron2(out, ops[i]);
    }
    return out;
}

StateVector apply(const OperatorMatrix& op, const StateVector& s) {
    if (op.shape() != s.shape()) {
        throw std::invalid_argument("apply: operator and state shapes differ");
    }
    const int d = op.dim();
    StateVector out = StateVector::zero(op.shape());
    for (int r = 0; r < d; ++r) {
        cx acc{0.0, 0.0};
        for (int c = 0; c < d; ++c) {
            acc += op.at(r, c) * s.amp(c);
        }
        out.set_amp(r, acc);
    }
    return out;
}

cx inner(const StateVector& x, const StateVector& y) {
    if (x.shape() != y.shape()) {
        throw std::invalid_argument("inner: mismatched shapes");
    }
    cx acc{0.0, 0.0};
    for (int i = 0; i < x.dim(); ++i) {
        acc += std::conj(x.amp(i)) * y.amp(i);
    }
    return acc;
}

double fidelity(const StateVector& x, const StateVector& y) {
    if (x.shape() != y.shape()) {
        throw std::invalid_argument("fidelity: mismatched shapes");
    }
    if (!x.is_normalized()) {
        throw std::invalid_argument("fidelity: first argument not normalized (norm " +
                                    std::to_string(x.norm()) + ")");
    }
    if (!y.is_normalized()) {
        throw std::invalid_argument("fidelity: second argument not normalized (norm " +
                                    std::to_string(y.norm()) + ")");
    }
    return std::norm(inner(x, y));
}

StateVector project_unnormalized(const StateVector& s, int subsystem,
                                 const StateVector& basis_vector) {
    const SpaceShape& shape = s.shape();
    const int d_sub = shape.dim(subsystem);
    if (basis_vector.shape() != SpaceShape({d_sub})) {
        throw std::invalid_argument("project: basis vector does not live on subsystem " +
                                    std::to_string(subsystem));
    }
    const SpaceShape rest = shape.without(subsystem);

    // stride of `subsystem` in the row-major flat index
    int stride = 1;
    for (int i = shape.rank() - 1; i > subsystem; --i) stride *= shape.dim(i);

    StateVector out = StateVector::zero(rest);
    for (int flat = 0; flat < s.dim(); ++flat) {
        const int sub_idx = (flat / stride) % d_sub;
        const int rest_flat = (flat / (stride * d_sub)) * stride + (flat % stride);
        out.set_amp(rest_flat,
                    out.amp(rest_flat) + std::conj(basis_vector.amp(sub_idx)) * s.amp(flat));
    }
    return out;
}

Projection project_subsystem(const StateVector& s, int subsystem,
                             const StateVector& basis_vector) {
    if (!basis_vector.is_normalized()) {
        throw std::invalid_argument("project_subsystem: basis vector not normalized (norm " +
                                    std::to_string(basis_vector.norm()) + ")");
    }
    StateVector partial = project_unnormalized(s, subsystem, basis_vector);
    const double probability = partial.norm_sq();
    if (probability <= kZeroProb) {
        return Projection{probability, std::nullopt};
    }
    return Projection{probability, partial.normalized()};
}

std::string ket_label(const SpaceShape& shape, int flat) {
    const std::vector<int> multi = shape.multi_index(flat);
    bool compact = true;
    for (int d : shape.dims()) {
        if (d > 10) compact = false;
    }
    std::string out = "|";
    for (std::size_t i = 0; i < multi.size(); ++i) {
        if (i > 0 && !compact) out += ",";
        out += std::to_string(multi[i]);
    }
    return out + ">";
}

}  // namespace qwalk
