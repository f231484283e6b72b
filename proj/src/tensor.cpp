#include "integrax/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace integrax {

namespace {

long long product(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("leg dimensions must be positive");
        p *= d;
    }
    return p;
}

// Strides for row-major (last leg fastest) flattening.
std::vector<long long> strides_of(const std::vector<int>& dims) {
    std::vector<long long> st(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
        st[k] = st[k + 1] * dims[k + 1];
    return st;
}

void check_slot(int slot, int legs) {
    if (slot < 1 || slot > legs) throw std::out_of_range("leg index out of range");
}

}  // namespace

TensorOperator::TensorOperator(Matrix data, std::vector<int> dims)
    : data_(std::move(data)), dims_(std::move(dims)) {
    long long side = product(dims_);
    if (data_.rows() != side || data_.cols() != side)
        throw std::invalid_argument("matrix side does not match product of leg dimensions");
}

TensorOperator TensorOperator::identity(const std::vector<int>& dims) {
    long long side = product(dims);
    return TensorOperator(Matrix::Identity(side, side), dims);
}

TensorOperator TensorOperator::operator*(const TensorOperator& other) const {
    if (dims_ != other.dims_) throw std::invalid_argument("leg structure mismatch in product");
    return TensorOperator(data_ * other.data_, dims_);
}

TensorOperator TensorOperator::operator+(const TensorOperator& other) const {
    if (dims_ != other.dims_) throw std::invalid_argument("leg structure mismatch in sum");
    return TensorOperator(data_ + other.data_, dims_);
}

TensorOperator TensorOperator::operator-(const TensorOperator& other) const {
    if (dims_ != other.dims_) throw std::invalid_argument("leg structure mismatch in difference");
    return TensorOperator(data_ - other.data_, dims_);
}

TensorOperator TensorOperator::operator*(const Complex& c) const {
    return TensorOperator(data_ * c, dims_);
}

TensorOperator TensorOperator::inverse() const {
    return TensorOperator(data_.partialPivLu().inverse(), dims_);
}

TensorOperator TensorOperator::transpose() const {
    return TensorOperator(data_.transpose(), dims_);
}

nlohmann::json TensorOperator::to_json() const {
    nlohmann::json j;
    j["dims"] = dims_;
    nlohmann::json data = nlohmann::json::array();
    for (Eigen::Index r = 0; r < data_.rows(); ++r)
        for (Eigen::Index c = 0; c < data_.cols(); ++c)
            data.push_back({data_(r, c).real(), data_(r, c).imag()});
    j["data"] = std::move(data);
    return j;
}

TensorOperator TensorOperator::from_json(const nlohmann::json& j) {
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    long long side = product(dims);
    const auto& data = j.at("data");
    if (static_cast<long long>(data.size()) != side * side)
        throw std::invalid_argument("data length does not match dims");
    Matrix m(side, side);
    long long idx = 0;
    for (long long r = 0; r < side; ++r)
        for (long long c = 0; c < side; ++c, ++idx)
            m(r, c) = Complex(data[idx][0].get<double>(), data[idx][1].get<double>());
    return TensorOperator(std::move(m), std::move(dims));
}

LegPermutation::LegPermutation(std::vector<int> sigma) : sigma_(std::move(sigma)) {
    std::vector<bool> seen(sigma_.size(), false);
    for (int v : sigma_) {
        if (v < 1 || v > static_cast<int>(sigma_.size()) || seen[v - 1])
            throw std::invalid_argument("not a permutation");
        seen[v - 1] = true;
    }
}

LegPermutation LegPermutation::identity(int n) {
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 1);
    return LegPermutation(std::move(s));
}

LegPermutation LegPermutation::transposition(int n, int a, int b) {
    auto p = identity(n);
    std::swap(p.sigma_[a - 1], p.sigma_[b - 1]);
    return p;
}

LegPermutation LegPermutation::compose(const LegPermutation& other) const {
    if (size() != other.size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> s(sigma_.size());
    for (int i = 1; i <= size(); ++i) s[i - 1] = (*this)(other(i));
    return LegPermutation(std::move(s));
}

LegPermutation LegPermutation::inverse() const {
    std::vector<int> s(sigma_.size());
    for (int i = 1; i <= size(); ++i) s[(*this)(i)-1] = i;
    return LegPermutation(std::move(s));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

TensorOperator kron(const TensorOperator& a, const TensorOperator& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return TensorOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

TensorOperator permutation_operator(const LegPermutation& p, const std::vector<int>& dims) {
    int n = static_cast<int>(dims.size());
    if (p.size() != n) throw std::invalid_argument("permutation size does not match leg count");
    LegPermutation pinv = p.inverse();
    std::vector<int> row_dims(n);
    for (int k = 1; k <= n; ++k) row_dims[k - 1] = dims[pinv(k) - 1];

    long long side = product(dims);
    auto col_st = strides_of(dims);
    auto row_st = strides_of(row_dims);
    Matrix m = Matrix::Zero(side, side);
    std::vector<int> idx(n, 0);
    for (long long c = 0; c < side; ++c) {
        long long rest = c;
        for (int k = 0; k < n; ++k) {
            idx[k] = static_cast<int>(rest / col_st[k]);
            rest %= col_st[k];
        }
        long long r = 0;
        for (int k = 1; k <= n; ++k) r += static_cast<long long>(idx[pinv(k) - 1]) * row_st[k - 1];
        m(r, c) = 1.0;
    }
    return TensorOperator(std::move(m), row_dims);
}

TensorOperator embed(const TensorOperator& m, const std::vector<int>& slots,
                     const std::vector<int>& target_dims) {
    int n = static_cast<int>(target_dims.size());
    int k = static_cast<int>(slots.size());
    if (k != m.legs()) throw std::invalid_argument("slot count does not match operand legs");
    std::vector<bool> used(n, false);
    for (int j = 0; j < k; ++j) {
        check_slot(slots[j], n);
        if (used[slots[j] - 1]) throw std::invalid_argument("duplicate slot");
        used[slots[j] - 1] = true;
        if (target_dims[slots[j] - 1] != m.dims()[j])
            throw std::invalid_argument("leg dimension mismatch at slot");
    }

    std::vector<int> rest;  // 0-based legs carrying the identity
    for (int j = 0; j < n; ++j)
        if (!used[j]) rest.push_back(j);

    long long side = product(target_dims);
    auto st = strides_of(target_dims);
    auto mst = strides_of(m.dims());
    long long mside = m.side();
    long long rest_count = 1;
    for (int j : rest) rest_count *= target_dims[j];

    Matrix out = Matrix::Zero(side, side);
    std::vector<int> rest_idx(rest.size(), 0);
    for (long long t = 0; t < rest_count; ++t) {
        long long base = 0;
        {
            long long r = t;
            for (int j = static_cast<int>(rest.size()) - 1; j >= 0; --j) {
                rest_idx[j] = static_cast<int>(r % target_dims[rest[j]]);
                r /= target_dims[rest[j]];
            }
            for (size_t j = 0; j < rest.size(); ++j) base += rest_idx[j] * st[rest[j]];
        }
        for (long long mr = 0; mr < mside; ++mr) {
            long long R = base, rr = mr;
            for (int j = 0; j < k; ++j) {
                R += (rr / mst[j]) * st[slots[j] - 1];
                rr %= mst[j];
            }
            for (long long mc = 0; mc < mside; ++mc) {
                Complex v = m.matrix()(mr, mc);
                if (v == Complex(0.0, 0.0)) continue;
                long long C = base, cc = mc;
                for (int j = 0; j < k; ++j) {
                    C += (cc / mst[j]) * st[slots[j] - 1];
                    cc %= mst[j];
                }
                out(R, C) = v;
            }
        }
    }
    return TensorOperator(std::move(out), target_dims);
}

TensorOperator embed(const Matrix& m, int slot, const std::vector<int>& target_dims) {
    check_slot(slot, static_cast<int>(target_dims.size()));
    return embed(TensorOperator(m, {target_dims[slot - 1]}), {slot}, target_dims);
}

TensorOperator partial_transpose(const TensorOperator& m, int slot) {
    check_slot(slot, m.legs());
    const auto& dims = m.dims();
    auto st = strides_of(dims);
    long long side = m.side();
    long long stride = st[slot - 1];
    int d = dims[slot - 1];
    Matrix out(side, side);
    for (long long r = 0; r < side; ++r) {
        int a = static_cast<int>((r / stride) % d);
        long long r0 = r - a * stride;
        for (long long c = 0; c < side; ++c) {
            int b = static_cast<int>((c / stride) % d);
            long long c0 = c - b * stride;
            out(r0 + b * stride, c0 + a * stride) = m.matrix()(r, c);
        }
    }
    return TensorOperator(std::move(out), dims);
}

TensorOperator partial_trace(const TensorOperator& m, int slot) {
    check_slot(slot, m.legs());
    const auto& dims = m.dims();
    auto st = strides_of(dims);
    long long stride = st[slot - 1];
    int d = dims[slot - 1];

    std::vector<int> out_dims;
    for (int j = 0; j < m.legs(); ++j)
        if (j != slot - 1) out_dims.push_back(dims[j]);
    long long out_side = product(out_dims);

    // Map a reduced index to a full index with the traced leg set to 0.
    long long block = stride * d;  // combined stride of legs at and before `slot`
    auto lift = [&](long long x) {
        long long high = x / stride, low = x % stride;
        return high * block + low;
    };

    Matrix out = Matrix::Zero(out_side, out_side);
    for (long long r = 0; r < out_side; ++r) {
        long long R = lift(r);
        for (long long c = 0; c < out_side; ++c) {
            long long C = lift(c);
            Complex sum = 0.0;
            for (int a = 0; a < d; ++a) sum += m.matrix()(R + a * stride, C + a * stride);
            out(r, c) = sum;
        }
    }
    return TensorOperator(std::move(out), out_dims);
}

}  // namespace integrax
