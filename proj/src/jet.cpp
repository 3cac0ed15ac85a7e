#include "rineq/jet.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace rineq {
namespace {

// Packed key: 2 bits per exponent (order <= 3 so exponents fit).
std::uint64_t pack(std::span<const int> alpha) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        key |= static_cast<std::uint64_t>(alpha[i]) << (2 * i);
    }
    return key;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

// Enumerate multi-indices of exact degree d in dim vars, lexicographic.
void enumerate_degree(int dim, int d, std::vector<int>& cur, int axis,
                      std::vector<std::vector<int>>& out) {
    if (axis == dim - 1) {
        cur[static_cast<std::size_t>(axis)] = d;
        out.push_back(cur);
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur[static_cast<std::size_t>(axis)] = e;
        enumerate_degree(dim, d - e, cur, axis + 1, out);
    }
}

struct TableKey {
    int dim;
    int order;
    bool operator<(const TableKey& o) const {
        return dim != o.dim ? dim < o.dim : order < o.order;
    }
};

std::map<TableKey, std::unique_ptr<MultiIndexTable>>& registry() {
    static std::map<TableKey, std::unique_ptr<MultiIndexTable>> r;
    return r;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::unordered_map<std::uint64_t, int> build_lookup(const std::vector<std::vector<int>>& idx) {
    std::unordered_map<std::uint64_t, int> lut;
    lut.reserve(idx.size() * 2);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        lut.emplace(pack(idx[i]), static_cast<int>(i));
    }
    return lut;
}

} // namespace

const MultiIndexTable& MultiIndexTable::get(int dim, int order) {
    if (dim < 1 || dim > kMaxDim) throw Error("jet dim out of range [1,16]");
    if (order < 0 || order > kMaxOrder) throw Error("jet order out of range [0,3]");
    // Lock-free fast path: tables are built once and never destroyed.
    static std::atomic<const MultiIndexTable*> cache[kMaxDim + 1][kMaxOrder + 1] = {};
    auto& slot = cache[dim][order];
    if (const MultiIndexTable* hit = slot.load(std::memory_order_acquire)) return *hit;

    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& reg = registry();
    const MultiIndexTable* lower = nullptr;
    for (int o = 0; o <= order; ++o) {
        auto it = reg.find({dim, o});
        if (it == reg.end()) {
            auto t = std::unique_ptr<MultiIndexTable>(new MultiIndexTable(dim, o, lower));
            it = reg.emplace(TableKey{dim, o}, std::move(t)).first;
            cache[dim][o].store(it->second.get(), std::memory_order_release);
        }
        lower = it->second.get();
    }
    return *lower;
}

MultiIndexTable::MultiIndexTable(int dim, int order, const MultiIndexTable* lower)
    : dim_(dim), order_(order) {
    std::vector<int> cur(static_cast<std::size_t>(dim), 0);
    for (int d = 0; d <= order; ++d) {
        enumerate_degree(dim, d, cur, 0, indices_);
    }
    degrees_.reserve(indices_.size());
    for (const auto& a : indices_) {
        int s = 0;
        for (int e : a) s += e;
        degrees_.push_back(s);
    }

    auto lut = build_lookup(indices_);
    auto lookup = [&](std::span<const int> alpha) -> int {
        auto it = lut.find(pack(alpha));
        return it == lut.end() ? -1 : it->second;
    };

    raised_.assign(indices_.size() * static_cast<std::size_t>(dim), -1);
    std::vector<int> tmp(static_cast<std::size_t>(dim));
    for (std::size_t s = 0; s < indices_.size(); ++s) {
        for (int ax = 0; ax < dim; ++ax) {
            tmp = indices_[s];
            tmp[static_cast<std::size_t>(ax)] += 1;
            raised_[s * static_cast<std::size_t>(dim) + static_cast<std::size_t>(ax)] =
                lookup(tmp);
        }
    }

    // Leibniz: d^alpha(fg) = sum_{beta <= alpha} C(alpha,beta) d^beta f d^(alpha-beta) g.
    mul_.resize(indices_.size());
    std::vector<int> beta(static_cast<std::size_t>(dim)), rem(static_cast<std::size_t>(dim));
    for (std::size_t s = 0; s < indices_.size(); ++s) {
        const auto& alpha = indices_[s];
        std::fill(beta.begin(), beta.end(), 0);
        bool done = false;
        while (!done) {
            double coef = 1.0;
            for (int i = 0; i < dim; ++i) {
                coef *= binom(alpha[static_cast<std::size_t>(i)], beta[static_cast<std::size_t>(i)]);
                rem[static_cast<std::size_t>(i)] =
                    alpha[static_cast<std::size_t>(i)] - beta[static_cast<std::size_t>(i)];
            }
            mul_[s].push_back({lookup(beta), lookup(rem), coef});
            // odometer over beta <= alpha
            int ax = 0;
            for (; ax < dim; ++ax) {
                if (beta[static_cast<std::size_t>(ax)] < alpha[static_cast<std::size_t>(ax)]) {
                    beta[static_cast<std::size_t>(ax)] += 1;
                    break;
                }
                beta[static_cast<std::size_t>(ax)] = 0;
            }
            done = (ax == dim);
        }
    }

    if (lower != nullptr) {
        deriv_src_.resize(static_cast<std::size_t>(dim));
        for (int ax = 0; ax < dim; ++ax) {
            auto& m = deriv_src_[static_cast<std::size_t>(ax)];
            m.resize(static_cast<std::size_t>(lower->size()));
            for (int ls = 0; ls < lower->size(); ++ls) {
                tmp.assign(lower->multi_index(ls).begin(), lower->multi_index(ls).end());
                tmp[static_cast<std::size_t>(ax)] += 1;
                m[static_cast<std::size_t>(ls)] = lookup(tmp);
            }
        }
    }
}

int MultiIndexTable::find(std::span<const int> alpha) const {
    for (std::size_t s = 0; s < indices_.size(); ++s) {
        if (std::equal(alpha.begin(), alpha.end(), indices_[s].begin())) {
            return static_cast<int>(s);
        }
    }
    return -1;
}

Jet Jet::seed(int axis, double value, int dim, int order) {
    if (axis < 0 || axis >= dim) throw Error("seed: variable index out of range");
    Jet j(dim, order);
    j.c_[0] = value;
    if (order >= 1) j.c_[j.table_->raised(0, axis)] = 1.0;
    return j;
}

void Jet::check_same_shape(const Jet& o) const {
    if (table_ != o.table_) throw Error("jet shape mismatch (dim/order)");
}

Jet Jet::truncated(int order) const {
    if (order == this->order()) return *this;
    if (order > this->order()) throw Error("truncated: cannot raise jet order");
    Jet out(dim(), order);
    for (int s = 0; s < out.size(); ++s) out.c_[s] = c_[s];
    return out;
}

Jet Jet::derivative(int axis) const {
    if (order() < 1) throw Error("derivative: order-0 jet");
    if (axis < 0 || axis >= dim()) throw Error("derivative: axis out of range");
    Jet out(dim(), order() - 1);
    for (int s = 0; s < out.size(); ++s) out.c_[s] = c_[table_->derivative_source(axis, s)];
    return out;
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (int i = 0; i < out.size(); ++i) out.c_[i] = -out.c_[i];
    return out;
}

Jet& Jet::operator+=(const Jet& o) {
    check_same_shape(o);
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_same_shape(o);
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (int i = 0; i < size(); ++i) c_[i] *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_same_shape(b);
    Jet out(a.dim(), a.order());
    const auto& table = *a.table_;
    for (int s = 0; s < out.size(); ++s) {
        double acc = 0.0;
        for (const auto& t : table.mul_terms(s)) {
            acc += t.binom * a.c_[t.lhs] * b.c_[t.rhs];
        }
        out.c_[s] = acc;
    }
    return out;
}

namespace {

// Derivatives g^(0..order)(v) for the supported univariate functions.
void univariate_derivs(Univariate fn, double v, int order, double* d) {
    switch (fn) {
        case Univariate::Exp: {
            double e = std::exp(v);
            for (int k = 0; k <= order; ++k) d[k] = e;
            return;
        }
        case Univariate::Log: {
            if (!(v > 0.0)) throw PositivityViolation("log of non-positive jet value");
            d[0] = std::log(v);
            if (order >= 1) d[1] = 1.0 / v;
            if (order >= 2) d[2] = -1.0 / (v * v);
            if (order >= 3) d[3] = 2.0 / (v * v * v);
            return;
        }
        case Univariate::Sqrt: {
            if (!(v > 0.0)) throw PositivityViolation("sqrt of non-positive jet value");
            double r = std::sqrt(v);
            d[0] = r;
            if (order >= 1) d[1] = 0.5 / r;
            if (order >= 2) d[2] = -0.25 / (v * r);
            if (order >= 3) d[3] = 0.375 / (v * v * r);
            return;
        }
        case Univariate::Sin: {
            double s = std::sin(v), c = std::cos(v);
            double cyc[4] = {s, c, -s, -c};
            for (int k = 0; k <= order; ++k) d[k] = cyc[k & 3];
            return;
        }
        case Univariate::Cos: {
            double s = std::sin(v), c = std::cos(v);
            double cyc[4] = {c, -s, -c, s};
            for (int k = 0; k <= order; ++k) d[k] = cyc[k & 3];
            return;
        }
    }
    throw Error("unknown univariate function");
}

// Horner evaluation of the truncated Taylor series of g around f.value():
// exact at the jet's order because (f - f0) has zero value part.
Jet compose_taylor(const Jet& f, const double* derivs) {
    const int order = f.order();
    double fact = 1.0;
    double taylor[MultiIndexTable::kMaxOrder + 1];
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        taylor[k] = derivs[k] / fact;
    }
    Jet h = f;
    h[0] = 0.0;
    Jet acc = Jet::constant(taylor[order], f.dim(), f.order());
    for (int k = order - 1; k >= 0; --k) {
        acc = acc * h;
        acc += taylor[k];
    }
    return acc;
}

} // namespace

Jet compose_univariate(const Jet& f, Univariate fn) {
    double d[MultiIndexTable::kMaxOrder + 1] = {0, 0, 0, 0};
    univariate_derivs(fn, f.value(), f.order(), d);
    return compose_taylor(f, d);
}

Jet pow(const Jet& f, double p) {
    double v = f.value();
    if (!(v > 0.0)) throw PositivityViolation("pow of non-positive jet value");
    double d[MultiIndexTable::kMaxOrder + 1] = {0, 0, 0, 0};
    d[0] = std::pow(v, p);
    if (f.order() >= 1) d[1] = p * std::pow(v, p - 1);
    if (f.order() >= 2) d[2] = p * (p - 1) * std::pow(v, p - 2);
    if (f.order() >= 3) d[3] = p * (p - 1) * (p - 2) * std::pow(v, p - 3);
    return compose_taylor(f, d);
}

Jet operator/(const Jet& a, const Jet& b) {
    a.check_same_shape(b);
    double v = b.value();
    if (v == 0.0) throw DegenerateValue("division by jet with zero value");
    double d[MultiIndexTable::kMaxOrder + 1] = {0, 0, 0, 0};
    d[0] = 1.0 / v;
    if (b.order() >= 1) d[1] = -1.0 / (v * v);
    if (b.order() >= 2) d[2] = 2.0 / (v * v * v);
    if (b.order() >= 3) d[3] = -6.0 / (v * v * v * v);
    return a * compose_taylor(b, d);
}

} // namespace rineq
