#include "skewmet/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace skewmet::gf {

namespace {

// ---- dense polynomial helpers over F_p (little-endian uint32 digits) ----

using Poly = std::vector<uint32_t>;

int pdeg(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

void ptrim(Poly& a) { a.resize(static_cast<size_t>(pdeg(a) + 1)); }

uint32_t fp_inv(uint32_t a, uint32_t p) {
    // extended Euclid on integers
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("fp_inv: not invertible");
    return static_cast<uint32_t>(t < 0 ? t + p : t);
}

Poly pmul(const Poly& a, const Poly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<uint32_t>((out[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    return out;
}

// Remainder of a modulo monic m (in place on a copy).
Poly pmod_monic(Poly a, const Poly& m, uint32_t p) {
    const int dm = pdeg(m);
    for (int k = pdeg(a); k >= dm && k >= 0; k = pdeg(a)) {
        if (k < dm) break;
        const uint64_t c = a[static_cast<size_t>(k)];
        a[static_cast<size_t>(k)] = 0;
        for (int i = 0; i < dm; ++i) {
            const uint64_t sub = c * m[static_cast<size_t>(i)] % p;
            a[static_cast<size_t>(k - dm + i)] =
                static_cast<uint32_t>((a[static_cast<size_t>(k - dm + i)] + p - sub) % p);
        }
    }
    ptrim(a);
    return a;
}

Poly pgcd(Poly a, Poly b, uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // make b monic, then reduce a mod b
        const uint32_t lead = b.back();
        if (lead != 1) {
            const uint32_t li = fp_inv(lead, p);
            for (auto& c : b) c = static_cast<uint32_t>(uint64_t(c) * li % p);
        }
        Poly r = pmod_monic(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        const uint32_t li = fp_inv(a.back(), p);
        for (auto& c : a) c = static_cast<uint32_t>(uint64_t(c) * li % p);
    }
    return a;
}

// W -> W^p mod m, for W with F_p coefficients (c^p = c).
Poly frob_step_fp(const Poly& w, const Poly& m, uint32_t p) {
    if (w.empty()) return {};
    Poly big(static_cast<size_t>(pdeg(w)) * p + 1, 0);
    for (size_t j = 0; j < w.size(); ++j)
        if (w[j] != 0) big[j * p] = w[j];
    return pmod_monic(std::move(big), m, p);
}

bool is_irreducible(const Poly& cand, uint32_t p) {
    const int n = pdeg(cand);
    if (n <= 0) return false;
    if (n == 1) return true;
    if (cand[0] == 0) return false;
    Poly w = {0, 1};
    const Poly y = {0, 1};
    for (int s = 1; s <= n; ++s) {
        w = frob_step_fp(w, cand, p);
        if (s <= n / 2) {
            Poly d = w;
            if (d.size() < 2) d.resize(2, 0);
            d[1] = (d[1] + p - 1) % p;  // W - Y
            if (pdeg(pgcd(d, cand, p)) > 0) return false;
        }
    }
    ptrim(w);
    return w == y;
}

// Lexicographically smallest monic irreducible of the given degree:
// enumerate coefficient lists [c_0..c_{deg-1}] in little-endian lex order.
Poly smallest_irreducible(uint32_t p, uint32_t deg) {
    Poly cand(deg + 1, 0);
    cand[deg] = 1;
    for (;;) {
        if (is_irreducible(cand, p)) return cand;
        int i = static_cast<int>(deg) - 1;
        for (; i >= 0; --i) {
            if (++cand[static_cast<size_t>(i)] < p) break;
            cand[static_cast<size_t>(i)] = 0;
        }
        if (i < 0) throw std::logic_error("smallest_irreducible: search exhausted");
    }
}

// Gauss-Jordan inverse of an n x n matrix over F_p (row-major).
std::vector<uint32_t> mat_inverse(std::vector<uint32_t> m, uint32_t n, uint32_t p) {
    std::vector<uint32_t> inv(static_cast<size_t>(n) * n, 0);
    for (uint32_t i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = 1;
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = col;
        while (piv < n && m[static_cast<size_t>(piv) * n + col] == 0) ++piv;
        if (piv == n) throw std::logic_error("mat_inverse: singular");
        if (piv != col) {
            for (uint32_t j = 0; j < n; ++j) {
                std::swap(m[static_cast<size_t>(piv) * n + j], m[static_cast<size_t>(col) * n + j]);
                std::swap(inv[static_cast<size_t>(piv) * n + j], inv[static_cast<size_t>(col) * n + j]);
            }
        }
        const uint32_t pi = fp_inv(m[static_cast<size_t>(col) * n + col], p);
        for (uint32_t j = 0; j < n; ++j) {
            m[static_cast<size_t>(col) * n + j] =
                static_cast<uint32_t>(uint64_t(m[static_cast<size_t>(col) * n + j]) * pi % p);
            inv[static_cast<size_t>(col) * n + j] =
                static_cast<uint32_t>(uint64_t(inv[static_cast<size_t>(col) * n + j]) * pi % p);
        }
        for (uint32_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const uint64_t f = m[static_cast<size_t>(r) * n + col];
            if (f == 0) continue;
            for (uint32_t j = 0; j < n; ++j) {
                m[static_cast<size_t>(r) * n + j] = static_cast<uint32_t>(
                    (m[static_cast<size_t>(r) * n + j] + p * f - f * m[static_cast<size_t>(col) * n + j] % p) % p);
                inv[static_cast<size_t>(r) * n + j] = static_cast<uint32_t>(
                    (inv[static_cast<size_t>(r) * n + j] + p * f - f * inv[static_cast<size_t>(col) * n + j] % p) % p);
            }
        }
    }
    return inv;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---- FieldCtx ----

uint64_t FieldCtx::order_saturated() const {
    uint64_t v = 1;
    for (uint32_t i = 0; i < deg_; ++i) {
        if (v > UINT64_MAX / p_) return UINT64_MAX;
        v *= p_;
    }
    return v;
}

void FieldCtx::add(const uint32_t* a, const uint32_t* b, uint32_t* out) const {
    for (uint32_t i = 0; i < deg_; ++i) out[i] = (a[i] + b[i]) % p_;
}

void FieldCtx::sub(const uint32_t* a, const uint32_t* b, uint32_t* out) const {
    for (uint32_t i = 0; i < deg_; ++i) out[i] = (a[i] + p_ - b[i]) % p_;
}

void FieldCtx::neg(const uint32_t* a, uint32_t* out) const {
    for (uint32_t i = 0; i < deg_; ++i) out[i] = (p_ - a[i]) % p_;
}

void FieldCtx::mul(const uint32_t* a, const uint32_t* b, uint32_t* out) const {
    std::vector<uint64_t> acc(2 * deg_ - 1, 0);
    for (uint32_t i = 0; i < deg_; ++i) {
        if (a[i] == 0) continue;
        for (uint32_t j = 0; j < deg_; ++j) acc[i + j] += uint64_t(a[i]) * b[j];
    }
    for (uint32_t k = 2 * deg_ - 2; k >= deg_ && k < 2 * deg_; --k) {
        const uint64_t c = acc[k] % p_;
        if (c != 0) {
            // x^deg = -sum m_i x^i
            for (uint32_t i = 0; i < deg_; ++i)
                acc[k - deg_ + i] += c * (p_ - modulus_[i]);
        }
        acc[k] = 0;
        if (k == deg_) break;
    }
    for (uint32_t i = 0; i < deg_; ++i) out[i] = static_cast<uint32_t>(acc[i] % p_);
}

void FieldCtx::inv(const uint32_t* a, uint32_t* out) const {
    // extended Euclid in F_p[x] against the modulus
    Poly r0(modulus_), r1(a, a + deg_);
    ptrim(r1);
    if (r1.empty()) throw std::invalid_argument("field inverse of zero");
    Poly t0 = {}, t1 = {1};
    while (pdeg(r1) > 0) {
        // divide r0 by r1
        Poly q;
        Poly rem = r0;
        const int d1 = pdeg(r1);
        const uint32_t li = fp_inv(r1[static_cast<size_t>(d1)], p_);
        q.assign(static_cast<size_t>(std::max(pdeg(rem) - d1 + 1, 1)), 0);
        for (int k = pdeg(rem); k >= d1; k = pdeg(rem)) {
            const uint32_t c = static_cast<uint32_t>(uint64_t(rem[static_cast<size_t>(k)]) * li % p_);
            q[static_cast<size_t>(k - d1)] = c;
            for (int i = 0; i <= d1; ++i)
                rem[static_cast<size_t>(k - d1 + i)] = static_cast<uint32_t>(
                    (rem[static_cast<size_t>(k - d1 + i)] + p_ -
                     static_cast<uint32_t>(uint64_t(c) * r1[static_cast<size_t>(i)] % p_)) %
                    p_);
            ptrim(rem);
            if (rem.empty()) break;
        }
        Poly t2 = pmul(q, t1, p_);
        t2.resize(std::max(t0.size(), t2.size()), 0);
        for (size_t i = 0; i < t0.size(); ++i) t2[i] = (p_ + t0[i] - t2[i] % p_) % p_;
        for (size_t i = t0.size(); i < t2.size(); ++i) t2[i] = (p_ - t2[i] % p_) % p_;
        ptrim(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r1.empty()) throw std::invalid_argument("field inverse: element not invertible");
    const uint32_t scale = fp_inv(r1[0], p_);
    std::fill(out, out + deg_, 0);
    for (size_t i = 0; i < t1.size() && i < deg_; ++i)
        out[i] = static_cast<uint32_t>(uint64_t(t1[i]) * scale % p_);
}

void FieldCtx::frob(const uint32_t* a, uint32_t* out) const {
    apply_matrix(frob_, deg_, p_, a, out);
}

void FieldCtx::frob_inv(const uint32_t* a, uint32_t* out) const {
    apply_matrix(frob_inv_, deg_, p_, a, out);
}

void FieldCtx::apply_matrix(const std::vector<uint32_t>& m, uint32_t deg, uint32_t p,
                            const uint32_t* a, uint32_t* out) {
    std::vector<uint64_t> acc(deg, 0);
    for (uint32_t j = 0; j < deg; ++j) {
        if (a[j] == 0) continue;
        for (uint32_t i = 0; i < deg; ++i) acc[i] += uint64_t(m[static_cast<size_t>(i) * deg + j]) * a[j];
    }
    for (uint32_t i = 0; i < deg; ++i) out[i] = static_cast<uint32_t>(acc[i] % p);
}

std::vector<uint32_t> FieldCtx::frob_power_matrix(int64_t k) const {
    int64_t r = k % deg_;
    if (r < 0) r += deg_;
    std::vector<uint32_t> m(static_cast<size_t>(deg_) * deg_, 0);
    for (uint32_t i = 0; i < deg_; ++i) m[static_cast<size_t>(i) * deg_ + i] = 1;
    for (int64_t step = 0; step < r; ++step) {
        std::vector<uint32_t> nm(static_cast<size_t>(deg_) * deg_, 0);
        for (uint32_t i = 0; i < deg_; ++i)
            for (uint32_t l = 0; l < deg_; ++l) {
                const uint64_t f = frob_[static_cast<size_t>(i) * deg_ + l];
                if (f == 0) continue;
                for (uint32_t j = 0; j < deg_; ++j)
                    nm[static_cast<size_t>(i) * deg_ + j] = static_cast<uint32_t>(
                        (nm[static_cast<size_t>(i) * deg_ + j] + f * m[static_cast<size_t>(l) * deg_ + j]) % p_);
            }
        m = std::move(nm);
    }
    return m;
}

FieldCtxPtr make_field(uint32_t p, uint32_t deg, uint32_t degree_cap) {
    if (!is_prime(p)) throw std::invalid_argument("make_field: p must be prime");
    if (deg < 1) throw std::invalid_argument("make_field: degree must be positive");
    if (deg > degree_cap)
        throw cap_error("make_field: degree " + std::to_string(deg) + " exceeds cap " +
                        std::to_string(degree_cap));

    static std::mutex mtx;
    static std::map<std::pair<uint32_t, uint32_t>, FieldCtxPtr> registry;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = registry.find({p, deg});
    if (it != registry.end()) return it->second;

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->deg_ = deg;
    ctx->modulus_ = smallest_irreducible(p, deg);

    // Frobenius matrix: column j is (x^j)^p = (x^p)^j reduced mod modulus.
    Poly xp = frob_step_fp({0, 1}, ctx->modulus_, p);
    xp.resize(deg, 0);
    ctx->frob_.assign(static_cast<size_t>(deg) * deg, 0);
    Poly acc = {1};
    for (uint32_t j = 0; j < deg; ++j) {
        for (size_t i = 0; i < acc.size(); ++i)
            ctx->frob_[i * deg + j] = acc[i];
        if (j + 1 < deg) {
            acc = pmod_monic(pmul(acc, xp, p), ctx->modulus_, p);
        }
    }
    ctx->frob_inv_ = deg == 1 ? ctx->frob_ : mat_inverse(ctx->frob_, deg, p);

    FieldCtxPtr out = ctx;
    registry.emplace(std::make_pair(p, deg), out);
    return out;
}

// ---- FieldElem ----

FieldElem::FieldElem(FieldCtxPtr ctx, std::vector<uint32_t> digits)
    : ctx_(std::move(ctx)), digits_(std::move(digits)) {
    if (digits_.size() != ctx_->deg())
        throw std::invalid_argument("FieldElem: digit count != field degree");
    for (auto& d : digits_) d %= ctx_->p();
}

FieldElem FieldElem::zero(const FieldCtxPtr& ctx) {
    return FieldElem(ctx, std::vector<uint32_t>(ctx->deg(), 0));
}

FieldElem FieldElem::one(const FieldCtxPtr& ctx) { return from_uint(ctx, 1); }

FieldElem FieldElem::generator(const FieldCtxPtr& ctx) {
    std::vector<uint32_t> d(ctx->deg(), 0);
    if (ctx->deg() == 1) {
        // F_p = F_p[x]/(x): the class of x is 0; fall back to the unit.
        d[0] = 1 % ctx->p();
    } else {
        d[1] = 1;
    }
    return FieldElem(ctx, std::move(d));
}

FieldElem FieldElem::from_uint(const FieldCtxPtr& ctx, uint64_t c) {
    std::vector<uint32_t> d(ctx->deg(), 0);
    d[0] = static_cast<uint32_t>(c % ctx->p());
    return FieldElem(ctx, std::move(d));
}

bool FieldElem::is_zero() const {
    return std::all_of(digits_.begin(), digits_.end(), [](uint32_t d) { return d == 0; });
}

bool FieldElem::in_prime_field() const {
    for (size_t i = 1; i < digits_.size(); ++i)
        if (digits_[i] != 0) return false;
    return true;
}

uint32_t FieldElem::prime_value() const {
    if (!in_prime_field()) throw std::invalid_argument("prime_value: element not in F_p");
    return digits_[0];
}

void FieldElem::check_same_ctx(const FieldElem& o) const {
    if (ctx_.get() != o.ctx_.get())
        throw std::invalid_argument("field element context mismatch");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_ctx(o);
    FieldElem out = *this;
    ctx_->add(digits_.data(), o.digits_.data(), out.digits_.data());
    return out;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same_ctx(o);
    FieldElem out = *this;
    ctx_->sub(digits_.data(), o.digits_.data(), out.digits_.data());
    return out;
}

FieldElem FieldElem::operator-() const {
    FieldElem out = *this;
    ctx_->neg(digits_.data(), out.digits_.data());
    return out;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_ctx(o);
    FieldElem out = *this;
    ctx_->mul(digits_.data(), o.digits_.data(), out.digits_.data());
    return out;
}

FieldElem FieldElem::inverse() const {
    FieldElem out = *this;
    ctx_->inv(digits_.data(), out.digits_.data());
    return out;
}

FieldElem FieldElem::pow(uint64_t e) const {
    FieldElem base = *this;
    FieldElem out = one(ctx_);
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

FieldElem FieldElem::frobenius() const {
    FieldElem out = *this;
    ctx_->frob(digits_.data(), out.digits_.data());
    return out;
}

FieldElem FieldElem::inv_frobenius() const {
    FieldElem out = *this;
    ctx_->frob_inv(digits_.data(), out.digits_.data());
    return out;
}

FieldElem FieldElem::frob_power(int64_t k) const {
    int64_t r = k % ctx_->deg();
    if (r < 0) r += ctx_->deg();
    FieldElem out = *this;
    for (int64_t i = 0; i < r; ++i) out = out.frobenius();
    return out;
}

bool FieldElem::operator==(const FieldElem& o) const {
    return ctx_.get() == o.ctx_.get() && digits_ == o.digits_;
}

bool FieldElem::lex_less(const FieldElem& o) const {
    check_same_ctx(o);
    return digits_ < o.digits_;
}

std::string FieldElem::str() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < digits_.size(); ++i) {
        if (i) os << ',';
        os << digits_[i];
    }
    os << ']';
    return os.str();
}

// ---- embeddings ----

namespace {

// polynomials with FieldElem coefficients, for root splitting
using EPoly = std::vector<FieldElem>;

int edeg(const EPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (!a[static_cast<size_t>(i)].is_zero()) return i;
    return -1;
}

void etrim(EPoly& a) { a.resize(static_cast<size_t>(edeg(a) + 1), a.empty() ? FieldElem() : a[0]); }

EPoly emod_monic(EPoly a, const EPoly& m) {
    const int dm = edeg(m);
    for (int k = edeg(a); k >= dm; k = edeg(a)) {
        FieldElem c = a[static_cast<size_t>(k)];
        a[static_cast<size_t>(k)] = c - c;  // zero
        for (int i = 0; i < dm; ++i)
            a[static_cast<size_t>(k - dm + i)] =
                a[static_cast<size_t>(k - dm + i)] - c * m[static_cast<size_t>(i)];
    }
    etrim(a);
    return a;
}

void emake_monic(EPoly& a) {
    const int d = edeg(a);
    if (d < 0) return;
    FieldElem li = a[static_cast<size_t>(d)].inverse();
    for (auto& c : a) c = c * li;
}

EPoly egcd(EPoly a, EPoly b) {
    etrim(a);
    etrim(b);
    while (edeg(b) >= 0) {
        emake_monic(b);
        EPoly r = emod_monic(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (edeg(a) >= 0) emake_monic(a);
    return a;
}

// W -> W^p mod m for W with coefficients in the big field.
EPoly efrob_step(const EPoly& w, const EPoly& m, uint32_t p) {
    const int dw = edeg(w);
    if (dw < 0) return {};
    const auto& ctx = w[0].ctx();
    EPoly big(static_cast<size_t>(dw) * p + 1, FieldElem::zero(ctx));
    for (int j = 0; j <= dw; ++j)
        big[static_cast<size_t>(j) * p] = w[static_cast<size_t>(j)].frobenius();
    return emod_monic(std::move(big), m);
}

// Divide a by monic b, returning the quotient (remainder must be handled by caller).
EPoly ediv_monic(EPoly a, const EPoly& b) {
    const int db = edeg(b);
    const int da = edeg(a);
    if (da < db) return {};
    const auto& ctx = a[0].ctx();
    EPoly q(static_cast<size_t>(da - db + 1), FieldElem::zero(ctx));
    for (int k = da; k >= db; k = edeg(a)) {
        if (k < db) break;
        FieldElem c = a[static_cast<size_t>(k)];
        q[static_cast<size_t>(k - db)] = c;
        for (int i = 0; i <= db; ++i)
            a[static_cast<size_t>(k - db + i)] =
                a[static_cast<size_t>(k - db + i)] - c * b[static_cast<size_t>(i)];
    }
    return q;
}

}  // namespace

std::vector<FieldElem> roots_in_field(const std::vector<uint32_t>& poly, const FieldCtxPtr& ctx) {
    EPoly h;
    h.reserve(poly.size());
    for (uint32_t c : poly) h.push_back(FieldElem::from_uint(ctx, c));
    etrim(h);
    if (edeg(h) < 1) return {};
    emake_monic(h);

    std::vector<FieldElem> roots;
    std::vector<EPoly> work = {std::move(h)};
    while (!work.empty()) {
        EPoly cur = std::move(work.back());
        work.pop_back();
        const int d = edeg(cur);
        if (d == 1) {
            roots.push_back(-cur[0]);
            continue;
        }
        // Split by F_p-traces of beta * Y for successive basis multipliers.
        bool split = false;
        for (uint32_t bi = 0; bi < ctx->deg() && !split; ++bi) {
            std::vector<uint32_t> bd(ctx->deg(), 0);
            bd[bi] = 1;
            FieldElem beta(ctx, std::move(bd));
            EPoly u(2, FieldElem::zero(ctx));
            u[1] = beta;  // beta * Y, already reduced since deg cur >= 2
            EPoly tr = u;
            for (uint32_t s = 1; s < ctx->deg(); ++s) {
                u = efrob_step(u, cur, ctx->p());
                u.resize(static_cast<size_t>(d), FieldElem::zero(ctx));
                tr.resize(std::max(tr.size(), u.size()), FieldElem::zero(ctx));
                for (size_t i = 0; i < u.size(); ++i) tr[i] = tr[i] + u[i];
            }
            for (uint32_t c = 0; c < ctx->p() && !split; ++c) {
                EPoly shifted = tr;
                if (shifted.empty()) shifted.push_back(FieldElem::zero(ctx));
                shifted[0] = shifted[0] - FieldElem::from_uint(ctx, c);
                EPoly g = egcd(cur, shifted);
                const int dg = edeg(g);
                if (dg > 0 && dg < d) {
                    EPoly quot = ediv_monic(cur, g);
                    etrim(quot);
                    work.push_back(std::move(g));
                    work.push_back(std::move(quot));
                    split = true;
                }
            }
        }
        if (!split)
            throw std::logic_error("roots_in_field: trace splitting failed (input not split/squarefree?)");
    }
    std::sort(roots.begin(), roots.end(),
              [](const FieldElem& a, const FieldElem& b) { return a.lex_less(b); });
    return roots;
}

FieldElem embed(const FieldElem& x, const FieldCtxPtr& dst) {
    const FieldCtxPtr& src = x.ctx();
    if (src.get() == dst.get()) return x;
    if (src->p() != dst->p()) throw std::invalid_argument("embed: characteristic mismatch");
    if (dst->deg() % src->deg() != 0)
        throw std::invalid_argument("embed: source degree does not divide target degree");
    if (src->deg() == 1) return FieldElem::from_uint(dst, x.digits()[0]);

    static std::mutex mtx;
    static std::map<std::pair<const FieldCtx*, const FieldCtx*>, FieldElem> cache;
    FieldElem gen_img;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({src.get(), dst.get()});
        if (it != cache.end()) {
            gen_img = it->second;
        } else {
            auto roots = roots_in_field(src->modulus(), dst);
            if (roots.size() != src->deg())
                throw std::logic_error("embed: modulus did not split in target");
            gen_img = roots.front();
            cache.emplace(std::make_pair(src.get(), dst.get()), gen_img);
        }
    }
    // Horner evaluation of the digit polynomial at the generator image.
    FieldElem acc = FieldElem::zero(dst);
    for (size_t i = src->deg(); i-- > 0;) {
        acc = acc * gen_img + FieldElem::from_uint(dst, x.digits()[i]);
    }
    return acc;
}

std::vector<FieldElem> fp_kernel(const FieldCtxPtr& ctx,
                                 const std::function<FieldElem(const FieldElem&)>& op) {
    const uint32_t n = ctx->deg();
    const uint32_t p = ctx->p();

    // Additivity spot-check (F_p-linearity follows since scalars are integers).
    SplitMix64 rng(0x6b7a3c19u ^ (uint64_t(p) << 32) ^ n);
    for (int t = 0; t < 16; ++t) {
        std::vector<uint32_t> da(n), db(n);
        for (auto& d : da) d = static_cast<uint32_t>(rng.below(p));
        for (auto& d : db) d = static_cast<uint32_t>(rng.below(p));
        FieldElem a(ctx, da), b(ctx, db);
        if (op(a + b) != op(a) + op(b))
            throw std::invalid_argument("fp_kernel: operator failed additivity check");
    }

    // Matrix of op, column j = op(e_j).
    std::vector<uint32_t> m(static_cast<size_t>(n) * n, 0);
    for (uint32_t j = 0; j < n; ++j) {
        std::vector<uint32_t> d(n, 0);
        d[j] = 1;
        FieldElem img = op(FieldElem(ctx, std::move(d)));
        for (uint32_t i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + j] = img.digits()[i];
    }

    // Reduced row echelon form.
    std::vector<uint32_t> pivot_col;
    uint32_t row = 0;
    for (uint32_t col = 0; col < n && row < n; ++col) {
        uint32_t piv = row;
        while (piv < n && m[static_cast<size_t>(piv) * n + col] == 0) ++piv;
        if (piv == n) continue;
        for (uint32_t j = 0; j < n; ++j)
            std::swap(m[static_cast<size_t>(piv) * n + j], m[static_cast<size_t>(row) * n + j]);
        const uint32_t pi = fp_inv(m[static_cast<size_t>(row) * n + col], p);
        for (uint32_t j = 0; j < n; ++j)
            m[static_cast<size_t>(row) * n + j] =
                static_cast<uint32_t>(uint64_t(m[static_cast<size_t>(row) * n + j]) * pi % p);
        for (uint32_t r = 0; r < n; ++r) {
            if (r == row) continue;
            const uint64_t f = m[static_cast<size_t>(r) * n + col];
            if (f == 0) continue;
            for (uint32_t j = 0; j < n; ++j)
                m[static_cast<size_t>(r) * n + j] = static_cast<uint32_t>(
                    (m[static_cast<size_t>(r) * n + j] + p * f -
                     f * m[static_cast<size_t>(row) * n + j] % p) %
                    p);
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<FieldElem> basis;
    uint32_t next_pivot = 0;
    for (uint32_t col = 0; col < n; ++col) {
        if (next_pivot < pivot_col.size() && pivot_col[next_pivot] == col) {
            ++next_pivot;
            continue;
        }
        std::vector<uint32_t> v(n, 0);
        v[col] = 1;
        for (uint32_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = (p - m[static_cast<size_t>(r) * n + col]) % p;
        basis.emplace_back(ctx, std::move(v));
    }
    return basis;
}

uint32_t trace_to_prime(const FieldElem& x) {
    FieldElem acc = x;
    FieldElem cur = x;
    for (uint32_t i = 1; i < x.ctx()->deg(); ++i) {
        cur = cur.frobenius();
        acc = acc + cur;
    }
    return acc.prime_value();
}

FieldElem norm_to_subfield(const FieldElem& x, uint32_t sub_deg) {
    const uint32_t n = x.ctx()->deg();
    if (sub_deg == 0 || n % sub_deg != 0)
        throw std::invalid_argument("norm_to_subfield: subfield degree must divide field degree");
    FieldElem acc = x;
    for (uint32_t i = 1; i < n / sub_deg; ++i) acc = acc * x.frob_power(int64_t(sub_deg) * i);
    return acc;
}

}  // namespace skewmet::gf
