#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rineq/errors.hpp"

namespace rineq {

/// Coefficient storage with a 20-slot inline buffer: dim <= 3 jets of any
/// supported order (and dim <= 16 at order 1) never touch the heap.
class CoeffArray {
public:
    static constexpr int kInline = 20;

    CoeffArray() = default;
    explicit CoeffArray(int n, double v = 0.0) { assign(n, v); }

    void assign(int n, double v) {
        size_ = n;
        if (n <= kInline) {
            inline_.fill(v);
        } else {
            heap_.assign(static_cast<std::size_t>(n), v);
        }
    }

    int size() const { return size_; }
    double* data() { return size_ <= kInline ? inline_.data() : heap_.data(); }
    const double* data() const { return size_ <= kInline ? inline_.data() : heap_.data(); }
    double operator[](int i) const { return data()[i]; }
    double& operator[](int i) { return data()[i]; }

private:
    std::array<double, kInline> inline_{};
    std::vector<double> heap_;
    int size_ = 0;
};

/// Shared enumeration of multi-indices alpha with |alpha| <= order in `dim`
/// variables, graded-lexicographic. One immutable instance per (dim, order);
/// jets of the same shape share a pointer to it. The table also carries the
/// Leibniz decomposition used by jet multiplication and the slot maps used
/// by derivative extraction, so those are plain array walks at runtime.
class MultiIndexTable {
public:
    static constexpr int kMaxOrder = 3;
    static constexpr int kMaxDim = 16;

    static const MultiIndexTable& get(int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(indices_.size()); }

    std::span<const int> multi_index(int slot) const {
        return {indices_[static_cast<std::size_t>(slot)].data(), static_cast<std::size_t>(dim_)};
    }
    int degree(int slot) const { return degrees_[static_cast<std::size_t>(slot)]; }

    /// Slot of alpha + e_axis, or -1 when that leaves the table.
    int raised(int slot, int axis) const {
        return raised_[static_cast<std::size_t>(slot) * static_cast<std::size_t>(dim_) +
                       static_cast<std::size_t>(axis)];
    }

    /// Slot of a multi-index, or -1 if absent.
    int find(std::span<const int> alpha) const;

    struct MulTerm {
        int lhs;
        int rhs;
        double binom;
    };
    /// d^alpha(fg) = sum over terms t of t.binom * f[t.lhs] * g[t.rhs].
    const std::vector<MulTerm>& mul_terms(int slot) const {
        return mul_[static_cast<std::size_t>(slot)];
    }

    /// Slot in THIS table holding d^(beta + e_axis), where beta is the
    /// multi-index of `lower_slot` in the (dim, order-1) table.
    int derivative_source(int axis, int lower_slot) const {
        return deriv_src_[static_cast<std::size_t>(axis)][static_cast<std::size_t>(lower_slot)];
    }

private:
    MultiIndexTable(int dim, int order, const MultiIndexTable* lower);

    int dim_;
    int order_;
    std::vector<std::vector<int>> indices_;
    std::vector<int> degrees_;
    std::vector<int> raised_;
    std::vector<std::vector<MulTerm>> mul_;
    std::vector<std::vector<int>> deriv_src_; // [axis][slot of lower table]
};

/// Truncated multivariate Taylor expansion: the value of a function together
/// with all raw partial derivatives d^alpha f through |alpha| <= order.
/// Coefficients are raw derivatives, NOT divided by alpha!, so consumers
/// read d_i d_j f directly. Arithmetic is exact for polynomial inputs of
/// total degree <= order. Immutable in practice: every operation returns a
/// fresh jet.
class Jet {
public:
    Jet() : table_(nullptr) {}
    Jet(int dim, int order)
        : table_(&MultiIndexTable::get(dim, order)), c_(table_->size(), 0.0) {}

    static Jet constant(double value, int dim, int order) {
        Jet j(dim, order);
        j.c_[0] = value;
        return j;
    }

    /// Jet of the coordinate function x_axis at `value`: first derivative 1
    /// in slot `axis`, everything else 0.
    static Jet seed(int axis, double value, int dim, int order);

    int dim() const { return table_->dim(); }
    int order() const { return table_->order(); }
    int size() const { return c_.size(); }
    const MultiIndexTable& table() const { return *table_; }

    double value() const { return c_[0]; }
    double operator[](int slot) const { return c_[slot]; }
    double& operator[](int slot) { return c_[slot]; }

    /// d_i f
    double d1(int i) const { return c_[table_->raised(0, i)]; }
    /// d_i d_j f
    double d2(int i, int j) const { return c_[table_->raised(table_->raised(0, i), j)]; }
    /// d_i d_j d_k f
    double d3(int i, int j, int k) const {
        return c_[table_->raised(table_->raised(table_->raised(0, i), j), k)];
    }

    /// Copy truncated to a lower order.
    Jet truncated(int order) const;

    /// Jet of d_axis f, one order lower.
    Jet derivative(int axis) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double s) {
        c_[0] += s;
        return *this;
    }
    Jet& operator-=(double s) {
        c_[0] -= s;
        return *this;
    }
    Jet& operator*=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

private:
    void check_same_shape(const Jet& o) const;

    const MultiIndexTable* table_;
    CoeffArray c_;
};

enum class Univariate { Exp, Log, Sqrt, Sin, Cos };

/// Faa-di-Bruno propagation of a univariate function through a jet,
/// truncated at the jet's order. Log/Sqrt require a positive value part.
Jet compose_univariate(const Jet& f, Univariate fn);

/// f^p for real exponent p; requires f.value() > 0.
Jet pow(const Jet& f, double p);

inline Jet exp(const Jet& f) { return compose_univariate(f, Univariate::Exp); }
inline Jet log(const Jet& f) { return compose_univariate(f, Univariate::Log); }
inline Jet sqrt(const Jet& f) { return compose_univariate(f, Univariate::Sqrt); }
inline Jet sin(const Jet& f) { return compose_univariate(f, Univariate::Sin); }
inline Jet cos(const Jet& f) { return compose_univariate(f, Univariate::Cos); }

} // namespace rineq
