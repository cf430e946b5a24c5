#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace hypertile {

// An element of GF(q), encoded as the integer sum c_i p^i of its polynomial
// coefficients. The encoding fixes the deterministic element order 0..q-1.
struct FieldElement {
    std::uint32_t value = 0;
    std::uint32_t q = 0;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

namespace detail {

struct ReductionEntry {
    std::uint32_t q;
    std::uint32_t p;
    std::uint32_t m;
    // Monic x^m + c_{m-1} x^{m-1} + ... + c_0; stored c_0..c_{m-1}.
    std::array<std::uint32_t, 4> low_coefficients;
};

// Conway polynomials for the supported proper prime powers.
inline constexpr std::array<ReductionEntry, 7> reduction_table{{
    {4, 2, 2, {1, 1, 0, 0}},
    {8, 2, 3, {1, 1, 0, 0}},
    {9, 3, 2, {2, 2, 0, 0}},
    {16, 2, 4, {1, 1, 0, 0}},
    {25, 5, 2, {2, 4, 0, 0}},
    {27, 3, 3, {1, 2, 0, 0}},
    {49, 7, 2, {3, 6, 0, 0}},
}};

inline bool is_prime(std::uint32_t x) {
    if (x < 2) return false;
    for (std::uint32_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

struct FieldTables {
    std::vector<std::uint32_t> add;
    std::vector<std::uint32_t> mul;
    std::vector<std::uint32_t> neg;
    std::vector<std::uint32_t> inv;
};

}  // namespace detail

class FieldSpec {
   public:
    std::uint32_t order() const noexcept { return q_; }
    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return m_; }

    // c_0..c_{m-1} of the monic reduction polynomial; empty for prime fields.
    const std::vector<std::uint32_t>& reduction_polynomial() const noexcept { return reduction_; }

    FieldElement zero() const { return {0, q_}; }
    FieldElement one() const { return {1, q_}; }

    FieldElement element(std::uint32_t encoded) const {
        if (encoded >= q_) throw Error("field element index out of range");
        return {encoded, q_};
    }

    std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out;
        for (std::uint32_t v = 0; v < q_; ++v) out.push_back({v, q_});
        return out;
    }

    std::vector<FieldElement> nonzero_elements() const {
        std::vector<FieldElement> out;
        for (std::uint32_t v = 1; v < q_; ++v) out.push_back({v, q_});
        return out;
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        check(a);
        check(b);
        if (tables_) return {tables_->add[a.value * q_ + b.value], q_};
        return {(a.value + b.value) % q_, q_};
    }

    FieldElement neg(FieldElement a) const {
        check(a);
        if (tables_) return {tables_->neg[a.value], q_};
        return {(q_ - a.value) % q_, q_};
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        check(a);
        check(b);
        if (tables_) return {tables_->mul[a.value * q_ + b.value], q_};
        return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % q_), q_};
    }

    FieldElement inv(FieldElement a) const {
        check(a);
        if (a.value == 0) throw Error("inverse of zero");
        if (tables_) return {tables_->inv[a.value], q_};
        return pow(a, q_ - 2);
    }

    FieldElement pow(FieldElement a, std::uint64_t exponent) const {
        FieldElement result = one();
        FieldElement base = a;
        while (exponent > 0) {
            if (exponent & 1) result = mul(result, base);
            base = mul(base, base);
            exponent >>= 1;
        }
        return result;
    }

    static FieldSpec create(std::uint32_t q);

   private:
    void check(FieldElement a) const {
        if (a.q != q_) throw Error("element of GF(" + std::to_string(a.q) + ") used in GF(" + std::to_string(q_) + ")");
        if (a.value >= q_) throw Error("unreduced field element");
    }

    std::uint32_t q_ = 0;
    std::uint32_t p_ = 0;
    std::uint32_t m_ = 0;
    std::vector<std::uint32_t> reduction_;
    std::shared_ptr<const detail::FieldTables> tables_;
};

namespace detail {

inline std::vector<std::uint32_t> digits(std::uint32_t value, std::uint32_t p, std::uint32_t m) {
    std::vector<std::uint32_t> out(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        out[i] = value % p;
        value /= p;
    }
    return out;
}

inline std::uint32_t undigits(const std::vector<std::uint32_t>& coefficients, std::uint32_t p) {
    std::uint32_t value = 0;
    for (std::size_t i = coefficients.size(); i-- > 0;) value = value * p + coefficients[i];
    return value;
}

inline std::shared_ptr<const FieldTables> build_tables(std::uint32_t q, std::uint32_t p, std::uint32_t m,
                                                      const std::vector<std::uint32_t>& reduction) {
    auto t = std::make_shared<FieldTables>();
    t->add.resize(q * q);
    t->mul.resize(q * q);
    t->neg.resize(q);
    t->inv.assign(q, 0);
    for (std::uint32_t a = 0; a < q; ++a) {
        const auto da = digits(a, p, m);
        std::vector<std::uint32_t> negated(m);
        for (std::uint32_t i = 0; i < m; ++i) negated[i] = (p - da[i]) % p;
        t->neg[a] = undigits(negated, p);
        for (std::uint32_t b = 0; b < q; ++b) {
            const auto db = digits(b, p, m);
            std::vector<std::uint32_t> sum(m);
            for (std::uint32_t i = 0; i < m; ++i) sum[i] = (da[i] + db[i]) % p;
            t->add[a * q + b] = undigits(sum, p);

            std::vector<std::uint32_t> product(2 * m - 1, 0);
            for (std::uint32_t i = 0; i < m; ++i)
                for (std::uint32_t j = 0; j < m; ++j) product[i + j] = (product[i + j] + da[i] * db[j]) % p;
            // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
            for (std::size_t d = product.size(); d-- > m;) {
                const std::uint32_t lead = product[d];
                if (lead == 0) continue;
                product[d] = 0;
                for (std::uint32_t i = 0; i < m; ++i)
                    product[d - m + i] = (product[d - m + i] + (p - lead) * reduction[i]) % p;
            }
            product.resize(m);
            t->mul[a * q + b] = undigits(product, p);
        }
    }
    for (std::uint32_t a = 1; a < q; ++a)
        for (std::uint32_t b = 1; b < q; ++b)
            if (t->mul[a * q + b] == 1) t->inv[a] = b;
    return t;
}

}  // namespace detail

// GF(q) for prime q, or for q in the built-in table of proper prime powers.
inline FieldSpec FieldSpec::create(std::uint32_t q) {
    if (q < 2) throw Error("field order must be at least 2");
    FieldSpec spec;
    spec.q_ = q;
    if (detail::is_prime(q)) {
        if (q > 65521) throw Error("prime field order " + std::to_string(q) + " too large");
        spec.p_ = q;
        spec.m_ = 1;
        return spec;
    }
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t rest = q;
    std::uint32_t m = 0;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1) throw Error(std::to_string(q) + " is not a prime power");
    for (const auto& entry : detail::reduction_table) {
        if (entry.q != q) continue;
        spec.p_ = p;
        spec.m_ = m;
        spec.reduction_.assign(entry.low_coefficients.begin(), entry.low_coefficients.begin() + m);
        spec.tables_ = detail::build_tables(q, p, m, spec.reduction_);
        return spec;
    }
    throw Error("GF(" + std::to_string(q) + ") is not in the supported reduction-polynomial table");
}

inline FieldSpec field(std::uint32_t q) { return FieldSpec::create(q); }

}  // namespace hypertile
