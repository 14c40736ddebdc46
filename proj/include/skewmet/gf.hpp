#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "skewmet/common.hpp"

namespace skewmet::gf {

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

// Arithmetic context of F_{p^N} = F_p[x]/(modulus).  The modulus is the
// lexicographically smallest monic irreducible of degree N (coefficient
// lists compared little-endian), so construction is deterministic: the same
// (p, N) always produces the same context, and make_field() hands out the
// same shared instance.  All cached tables are computed up front; a context
// is immutable afterwards and safe to share between threads.
class FieldCtx {
public:
    uint32_t p() const { return p_; }
    uint32_t deg() const { return deg_; }
    uint64_t order_saturated() const;  // min(p^deg, UINT64_MAX)
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    // --- digit-span primitives (little-endian, length deg) ---
    void add(const uint32_t* a, const uint32_t* b, uint32_t* out) const;
    void sub(const uint32_t* a, const uint32_t* b, uint32_t* out) const;
    void neg(const uint32_t* a, uint32_t* out) const;
    void mul(const uint32_t* a, const uint32_t* b, uint32_t* out) const;
    void inv(const uint32_t* a, uint32_t* out) const;  // throws on zero
    // x -> x^p and its inverse, as cached F_p-linear maps.
    void frob(const uint32_t* a, uint32_t* out) const;
    void frob_inv(const uint32_t* a, uint32_t* out) const;

    // Matrix of Frobenius^k in the coefficient basis (row-major deg x deg);
    // k may be negative.  Used by evaluation loops that apply the same power
    // to many elements.
    std::vector<uint32_t> frob_power_matrix(int64_t k) const;
    static void apply_matrix(const std::vector<uint32_t>& m, uint32_t deg,
                             uint32_t p, const uint32_t* a, uint32_t* out);

private:
    friend FieldCtxPtr make_field(uint32_t, uint32_t, uint32_t);
    FieldCtx() = default;

    uint32_t p_ = 0;
    uint32_t deg_ = 0;
    std::vector<uint32_t> modulus_;   // length deg+1, monic
    std::vector<uint32_t> frob_;      // deg x deg, row-major
    std::vector<uint32_t> frob_inv_;  // inverse matrix
};

// Deterministic field constructor with a registry: the returned pointer is
// unique per (p, N), so context identity can be tested by pointer equality.
// Throws std::invalid_argument for non-prime p, cap_error for N > degree_cap.
FieldCtxPtr make_field(uint32_t p, uint32_t deg, uint32_t degree_cap = 64);

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldCtxPtr ctx, std::vector<uint32_t> digits);

    static FieldElem zero(const FieldCtxPtr& ctx);
    static FieldElem one(const FieldCtxPtr& ctx);
    static FieldElem generator(const FieldCtxPtr& ctx);  // the class of x
    // Prime-field constant c * 1 (c reduced mod p).
    static FieldElem from_uint(const FieldCtxPtr& ctx, uint64_t c);

    const FieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<uint32_t>& digits() const { return digits_; }
    bool is_zero() const;
    // Nonzero digits only in position 0, i.e. the element lies in F_p.
    bool in_prime_field() const;
    uint32_t prime_value() const;  // throws if not in F_p

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem inverse() const;
    FieldElem pow(uint64_t e) const;
    FieldElem frobenius() const;
    FieldElem inv_frobenius() const;
    FieldElem frob_power(int64_t k) const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    // Strict ordering by little-endian digit comparison; also the canonical
    // report order for kernel elements.
    bool lex_less(const FieldElem& o) const;

    std::string str() const;

private:
    void check_same_ctx(const FieldElem& o) const;
    FieldCtxPtr ctx_;
    std::vector<uint32_t> digits_;
};

// Ring embedding F_{p^n} -> F_{p^N} for n | N.  Deterministic: the generator
// of src maps to the lexicographically smallest root of src.modulus in dst.
// Results are cached per (src, dst) pair; identity when src == dst.
FieldElem embed(const FieldElem& x, const FieldCtxPtr& dst);

// Basis of the kernel of an F_p-linear self-map, by Gaussian elimination on
// its matrix in the coefficient basis.  Linearity is spot-checked on 16
// deterministic pseudo-random pairs; failure throws std::invalid_argument.
std::vector<FieldElem> fp_kernel(const FieldCtxPtr& ctx,
                                 const std::function<FieldElem(const FieldElem&)>& op);

// Trace to the prime field, as a value in [0, p).
uint32_t trace_to_prime(const FieldElem& x);
// Norm onto the subfield F_{p^sub_deg} (sub_deg | deg), returned inside the
// same context.
FieldElem norm_to_subfield(const FieldElem& x, uint32_t sub_deg);

// All roots in `ctx` of a polynomial with F_p coefficients (little-endian,
// not necessarily monic), sorted lexicographically.  Deterministic
// trace-based splitting; intended for the small degrees used by embeddings.
std::vector<FieldElem> roots_in_field(const std::vector<uint32_t>& poly,
                                      const FieldCtxPtr& ctx);

bool is_prime(uint64_t n);

}  // namespace skewmet::gf
