#include "vqm/algebra.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace vqm {

AlgebraInstance::AlgebraInstance(std::string kind, int cutoff, std::vector<BasisElement> basis, BasisId vacuum,
                                 YTable y, Sl2Tables sl2)
    : kind_(std::move(kind)), cutoff_(cutoff), basis_(std::move(basis)), vacuum_(vacuum), y_(std::move(y)),
      sl2_(std::move(sl2)) {
    if (cutoff_ < 0)
        throw std::invalid_argument("AlgebraInstance: negative cutoff");
    if (vacuum_ >= basis_.size() || basis_[vacuum_].weight != 0)
        throw std::invalid_argument("AlgebraInstance: vacuum must be a weight-0 basis vector");
    by_weight_.assign(static_cast<std::size_t>(cutoff_) + 1, {});
    for (BasisId i = 0; i < basis_.size(); ++i) {
        const auto& b = basis_[i];
        if (b.weight < 0 || b.weight > cutoff_)
            throw std::invalid_argument("AlgebraInstance: basis weight outside [0, cutoff]: " + b.id);
        if (!by_name_.emplace(b.id, i).second)
            throw std::invalid_argument("AlgebraInstance: duplicate basis id " + b.id);
        by_weight_[static_cast<std::size_t>(b.weight)].push_back(i);
    }
    auto fix = [&](std::vector<std::optional<GradedVector>>& t) { t.resize(basis_.size()); };
    fix(sl2_.lm1);
    fix(sl2_.l0);
    fix(sl2_.l1);
}

BasisId AlgebraInstance::index_of(const std::string& id) const {
    auto it = by_name_.find(id);
    if (it == by_name_.end())
        throw std::out_of_range("unknown algebra basis id '" + id + "'");
    return it->second;
}

const std::vector<BasisId>& AlgebraInstance::of_weight(int k) const {
    static const std::vector<BasisId> empty;
    if (k < 0 || k > cutoff_)
        return empty;
    return by_weight_[static_cast<std::size_t>(k)];
}

ModeResult AlgebraInstance::mode(BasisId u, int n, BasisId v) const {
    if (u >= basis_.size() || v >= basis_.size())
        throw std::out_of_range("AlgebraInstance::mode: unknown basis id");
    const int wt = basis_[u].weight + basis_[v].weight - n - 1;
    if (wt < 0)
        return {};
    if (wt > cutoff_)
        return {{}, true};
    auto it = y_.find({u, n, v});
    if (it == y_.end())
        return {};
    return {it->second, false};
}

ModeResult AlgebraInstance::sl2_action(int j, BasisId v) const {
    if (v >= basis_.size())
        throw std::out_of_range("AlgebraInstance::sl2_action: unknown basis id");
    const std::vector<std::optional<GradedVector>>* table = nullptr;
    switch (j) {
    case -1: table = &sl2_.lm1; break;
    case 0: table = &sl2_.l0; break;
    case 1: table = &sl2_.l1; break;
    default: throw std::invalid_argument("sl2_action: j must be -1, 0 or 1");
    }
    const auto& entry = (*table)[v];
    if (!entry)
        return {{}, true};
    return {*entry, false};
}

std::optional<int> AlgebraInstance::weight_of(const GradedVector& v) const {
    std::optional<int> w;
    for (const auto& [id, c] : v) {
        int k = weight(id);
        if (w && *w != k)
            return std::nullopt;
        w = k;
    }
    return w;
}

ModeResult mode_action(const AlgebraInstance& alg, const GradedVector& u, int n, const GradedVector& v) {
    ModeResult out;
    for (const auto& [ui, uc] : u)
        for (const auto& [vi, vc] : v) {
            auto r = alg.mode(ui, n, vi);
            out.overflow |= r.overflow;
            out.value.add_scaled(r.value, uc * vc);
        }
    return out;
}

ModeResult sl2_action(const AlgebraInstance& alg, int j, const GradedVector& v) {
    ModeResult out;
    for (const auto& [id, c] : v) {
        auto r = alg.sl2_action(j, id);
        out.overflow |= r.overflow;
        out.value.add_scaled(r.value, c);
    }
    return out;
}

namespace {

struct Checker {
    const AlgebraInstance& alg;
    AxiomReport report;

    bool fail(const std::string& check, const std::string& where) {
        if (report.passed) {
            report.passed = false;
            report.failed_check = check;
            report.counterexample = where;
        }
        return false;
    }

    bool expect(const std::string& check, const ModeResult& lhs, const ModeResult& rhs, const std::string& where) {
        ++report.checks[check];
        if (lhs.overflow || rhs.overflow)
            return fail(check, where + " (truncation overflow inside window)");
        if (!(lhs.value == rhs.value))
            return fail(check, where);
        return true;
    }

    std::string name(BasisId id) const { return alg.name(id); }
};

int cap(int requested, int cutoff) { return requested < 0 ? cutoff : std::min(requested, cutoff); }


// Dense, allocation-free evaluation of the component Borcherds identity
// sum_k binom(m,k) (u_{p+k}v)_{m+n-k} w
//   = sum_k (-1)^k binom(p,k) (u_{p+m-k} v_{n+k} w - (-1)^p v_{p+n-k} u_{m+k} w)
// over all (p, m, n) keeping every intermediate vector within the cutoff.
class BorcherdsKernel {
public:
    explicit BorcherdsKernel(const AlgebraInstance& alg) : alg_(alg), cutoff_(alg.cutoff()) {
        const std::size_t d = alg.dim();
        table_.assign(d * d, std::vector<const GradedVector*>(static_cast<std::size_t>(cutoff_) + 1, nullptr));
        for (const auto& [key, val] : alg.y_table()) {
            auto [u, n, v] = key;
            const int slot = n - lowest(u, v);
            if (slot >= 0 && slot <= cutoff_)
                table_[u * d + v][static_cast<std::size_t>(slot)] = &val;
        }
        integral_ = true;
        for (const auto& [key, val] : alg.y_table())
            for (const auto& [id, c] : val)
                if (!c.is_integer() || !c.raw().get_num().fits_sint_p() ||
                    abs(c.raw().get_num()) >= mpz_class(1L << 31))
                    integral_ = false;
        if (integral_) {
            itable_.assign(d * d, std::vector<IntVec>(static_cast<std::size_t>(cutoff_) + 1));
            for (const auto& [key, val] : alg.y_table()) {
                auto [u, n, v] = key;
                const int slot = n - lowest(u, v);
                if (slot < 0 || slot > cutoff_)
                    continue;
                auto& iv = itable_[u * d + v][static_cast<std::size_t>(slot)];
                for (const auto& [id, c] : val)
                    iv.push_back({id, c.raw().get_num().get_si()});
            }
        }
        pos_.resize(d);
        for (int k = 0; k <= cutoff_; ++k) {
            const auto& ids = alg.of_weight(k);
            for (std::size_t i = 0; i < ids.size(); ++i)
                pos_[ids[i]] = i;
        }
        const int span = 2 * cutoff_ + 6;
        binom_.assign(static_cast<std::size_t>(2 * span + 1), std::vector<mpq_class>(static_cast<std::size_t>(span) + 1));
        for (int m = -span; m <= span; ++m)
            for (int k = 0; k <= span; ++k)
                binom_[static_cast<std::size_t>(m + span)][static_cast<std::size_t>(k)] = binom(m, k).raw();
        span_ = span;
        ibinom_.assign(binom_.size(), std::vector<std::int64_t>(static_cast<std::size_t>(span) + 1));
        for (std::size_t i = 0; i < binom_.size(); ++i)
            for (std::size_t k = 0; k < binom_[i].size(); ++k) {
                const mpq_class& q = binom_[i][k];
                if (q.get_num().fits_slong_p() && abs(q.get_num()) < mpz_class(1L << 44))
                    ibinom_[i][k] = q.get_num().get_si();
                else
                    integral_ = false;
            }
    }

    std::size_t count = 0;

    /// Returns a description of the first failing (p, m, n), if any.
    std::optional<std::string> check(BasisId u, BasisId v, BasisId w) {
        const int a = alg_.weight(u), b = alg_.weight(v), c = alg_.weight(w);
        for (int p = a + b - 1 - cutoff_; p <= a + b; ++p)
            for (int m = a + c - 1 - cutoff_; m <= a + c; ++m)
                for (int n = b + c - 1 - cutoff_; n <= b + c; ++n) {
                    const int fin = a + b + c - p - m - n - 2;
                    if (fin < 0 || fin > cutoff_)
                        continue;
                    ++count;
                    width_ = alg_.of_weight(fin).size();
                    if (integral_) {
                        iacc_.assign(width_, 0);
                        for (int k = 0; p + k <= a + b - 1; ++k)
                            add_int(u, p + k, v, m + n - k, w, false, icoef(m, k, 1));
                        for (int k = 0; n + k <= b + c - 1; ++k)
                            add_int(v, n + k, w, p + m - k, u, true, icoef(p, k, neg_one_pow(k)));
                        for (int k = 0; m + k <= a + c - 1; ++k)
                            add_int(u, m + k, w, p + n - k, v, true, icoef(p, k, -neg_one_pow(k + p)));
                        bool zero = true;
                        for (auto x : iacc_)
                            zero &= (x == 0);
                        if (!overflow_ && zero)
                            continue;
                    }
                    if (acc_.size() < width_)
                        acc_.resize(width_);
                    for (std::size_t i = 0; i < width_; ++i)
                        mpq_set_ui(acc_[i].get_mpq_t(), 0, 1);
                    for (int k = 0; p + k <= a + b - 1; ++k)
                        add_composed(u, p + k, v, m + n - k, w, false, coef(m, k, 1));
                    for (int k = 0; n + k <= b + c - 1; ++k)
                        add_composed(v, n + k, w, p + m - k, u, true, coef(p, k, neg_one_pow(k)));
                    for (int k = 0; m + k <= a + c - 1; ++k)
                        add_composed(u, m + k, w, p + n - k, v, true, coef(p, k, -neg_one_pow(k + p)));
                    if (overflow_ || !all_zero()) {
                        std::ostringstream os;
                        os << "u=" << alg_.name(u) << " v=" << alg_.name(v) << " w=" << alg_.name(w)
                           << " (p,m,n)=(" << p << "," << m << "," << n << ")";
                        if (overflow_)
                            os << " (truncation overflow inside window)";
                        return os.str();
                    }
                }
        return std::nullopt;
    }

private:
    int lowest(BasisId u, BasisId v) const { return alg_.weight(u) + alg_.weight(v) - 1 - cutoff_; }

    const GradedVector* get(BasisId u, int n, BasisId v) {
        const int slot = n - lowest(u, v);
        if (slot < 0) {
            overflow_ = true;
            return nullptr;
        }
        if (slot > cutoff_)
            return nullptr;
        return table_[u * alg_.dim() + v][static_cast<std::size_t>(slot)];
    }

    mpq_class coef(int m, int k, int sign) const {
        if (m < -span_ || m > span_ || k > span_)
            return binom(m, k).raw() * sign;
        return binom_[static_cast<std::size_t>(m + span_)][static_cast<std::size_t>(k)] * sign;
    }

    // inner = x_i y ; then either inner-vector modes on z (outerOnLeft = false:
    // (x_i y)_j z) or z_j inner (outerOnLeft = true). Subtracts when outerOnLeft.
    void add_composed(BasisId x, int i, BasisId y, int j, BasisId z, bool outerOnLeft, const mpq_class& c) {
        if (sgn(c) == 0)
            return;
        const GradedVector* inner = get(x, i, y);
        if (!inner)
            return;
        for (const auto& [id, ic] : *inner) {
            const GradedVector* outer = outerOnLeft ? get(z, j, id) : get(id, j, z);
            if (!outer)
                continue;
            mpq_mul(tmp_.get_mpq_t(), c.get_mpq_t(), ic.raw().get_mpq_t());
            if (outerOnLeft)
                mpq_neg(tmp_.get_mpq_t(), tmp_.get_mpq_t());
            for (const auto& [oid, oc] : *outer) {
                mpq_class& slot = acc_[pos_[oid]];
                mpq_mul(tmp2_.get_mpq_t(), tmp_.get_mpq_t(), oc.raw().get_mpq_t());
                mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp2_.get_mpq_t());
            }
        }
    }

    std::int64_t icoef(int m, int k, int sign) const {
        return ibinom_[static_cast<std::size_t>(m + span_)][static_cast<std::size_t>(k)] * sign;
    }

    void add_int(BasisId x, int i, BasisId y, int j, BasisId z, bool outerOnLeft, std::int64_t c) {
        if (c == 0)
            return;
        const std::size_t d = alg_.dim();
        auto at = [&](BasisId l, int idx, BasisId r) -> const IntVec* {
            const int slot = idx - lowest(l, r);
            if (slot < 0) {
                overflow_ = true;
                return nullptr;
            }
            if (slot > cutoff_)
                return nullptr;
            return &itable_[l * d + r][static_cast<std::size_t>(slot)];
        };
        const IntVec* inner = at(x, i, y);
        if (!inner)
            return;
        for (const auto& [id, ic] : *inner) {
            const IntVec* outer = outerOnLeft ? at(z, j, id) : at(id, j, z);
            if (!outer)
                continue;
            __int128 f = static_cast<__int128>(c) * ic;
            if (outerOnLeft)
                f = -f;
            for (const auto& [oid, oc] : *outer)
                iacc_[pos_[oid]] += f * oc;
        }
    }

    bool all_zero() const {
        for (std::size_t i = 0; i < width_; ++i)
            if (sgn(acc_[i]) != 0)
                return false;
        return true;
    }

    const AlgebraInstance& alg_;
    int cutoff_;
    int span_ = 0;
    std::vector<std::vector<const GradedVector*>> table_;
    std::vector<std::size_t> pos_;
    std::vector<std::vector<mpq_class>> binom_;
    using IntVec = std::vector<std::pair<BasisId, std::int64_t>>;
    bool integral_ = false;
    std::vector<std::vector<IntVec>> itable_;
    std::vector<std::vector<std::int64_t>> ibinom_;
    std::vector<__int128> iacc_;
    std::vector<mpq_class> acc_;
    std::size_t width_ = 0;
    mpq_class tmp_, tmp2_;
    bool overflow_ = false;
};

} // namespace

AxiomReport check_axioms(const AlgebraInstance& alg, const AxiomWindow& window) {
    Checker ck{alg, {}};
    const int cutoff = alg.cutoff();
    const BasisId vac = alg.vacuum();
    const auto unit = [](BasisId id) { return GradedVector::unit(id); };

    // weight bookkeeping and lower truncation of stored entries
    for (const auto& [key, val] : alg.y_table()) {
        auto [u, n, v] = key;
        const int expected = alg.weight(u) + alg.weight(v) - n - 1;
        ++ck.report.checks["weight"];
        if (n >= alg.weight(u) + alg.weight(v)) {
            std::ostringstream os;
            os << "stored " << alg.name(u) << "_" << n << " " << alg.name(v) << " violates lower truncation";
            ck.fail("lower-truncation", os.str());
        }
        for (const auto& [id, c] : val)
            if (alg.weight(id) != expected) {
                std::ostringstream os;
                os << alg.name(u) << "_" << n << " " << alg.name(v) << " has a component of weight " << alg.weight(id);
                ck.fail("weight", os.str());
            }
    }
    if (!ck.report.passed)
        return ck.report;

    BorcherdsKernel kernel(alg);
    const int wu = cap(window.max_weight_u, cutoff), wv = cap(window.max_weight_v, cutoff),
              ww = cap(window.max_weight_w, cutoff);

    for (BasisId v = 0; v < alg.dim(); ++v) {
        const int a = alg.weight(v);
        if (a > wv)
            continue;
        // vacuum: 1_n v = delta_{n,-1} v
        for (int n = a - 1 - cutoff; n <= a; ++n) {
            std::ostringstream os;
            os << "1_" << n << " " << alg.name(v);
            ModeResult rhs;
            if (n == -1)
                rhs.value = unit(v);
            if (!ck.expect("vacuum", {alg.mode(vac, n, v)}, rhs, os.str()))
                return ck.report;
        }
        // creation: v_{-1} 1 = v and v_n 1 = 0 for n >= 0
        for (int n = -1; n <= a; ++n) {
            std::ostringstream os;
            os << alg.name(v) << "_" << n << " 1";
            ModeResult rhs;
            if (n == -1)
                rhs.value = unit(v);
            if (!ck.expect("creation", alg.mode(v, n, vac), rhs, os.str()))
                return ck.report;
        }
        // L(0) grading
        {
            ModeResult rhs{unit(v).scaled(Rational(a)), false};
            if (!ck.expect("L0-weight", alg.sl2_action(0, v), rhs, "L(0) " + alg.name(v)))
                return ck.report;
        }
        // sl(2) commutation relations
        auto apply = [&](int j, const ModeResult& x) {
            ModeResult r = sl2_action(alg, j, x.value);
            r.overflow |= x.overflow;
            return r;
        };
        auto comm = [&](int i, int j) {
            ModeResult ij = apply(i, apply(j, {unit(v), false}));
            ModeResult ji = apply(j, apply(i, {unit(v), false}));
            ij.value.add_scaled(ji.value, Rational(-1));
            ij.overflow |= ji.overflow;
            return ij;
        };
        if (a + 1 <= cutoff) {
            if (!ck.expect("sl2-relations", comm(0, -1), alg.sl2_action(-1, v), "[L0,L-1] " + alg.name(v)))
                return ck.report;
            ModeResult rhs = alg.sl2_action(0, v);
            rhs.value = rhs.value.scaled(Rational(-2));
            if (!ck.expect("sl2-relations", comm(-1, 1), rhs, "[L-1,L1] " + alg.name(v)))
                return ck.report;
        }
        {
            ModeResult rhs = alg.sl2_action(1, v);
            rhs.value = rhs.value.scaled(Rational(-1));
            if (!ck.expect("sl2-relations", comm(0, 1), rhs, "[L0,L1] " + alg.name(v)))
                return ck.report;
        }
    }

    for (BasisId u = 0; u < alg.dim(); ++u) {
        const int a = alg.weight(u);
        if (a > wu)
            continue;
        for (BasisId v = 0; v < alg.dim(); ++v) {
            const int b = alg.weight(v);
            if (b > wv)
                continue;
            // L(-1)-derivative: (L(-1)u)_n v = -n u_{n-1} v
            if (a + 1 <= cutoff) {
                GradedVector lu = alg.sl2_action(-1, u).value;
                for (int n = a + b - cutoff; n <= a + b + 1; ++n) {
                    std::ostringstream os;
                    os << "(L(-1)" << alg.name(u) << ")_" << n << " " << alg.name(v);
                    ModeResult rhs = alg.mode(u, n - 1, v);
                    rhs.value = rhs.value.scaled(Rational(-n));
                    if (!ck.expect("L-1-derivative", mode_action(alg, lu, n, unit(v)), rhs, os.str()))
                        return ck.report;
                }
            }
            // [L(j), u_n] v = sum_k binom(j+1,k) (L(k-1)u)_{n+j+1-k} v
            for (int j = -1; j <= 1; ++j) {
                if (a + 1 > cutoff || b - j > cutoff)
                    continue;
                for (int n = a + b - 1 - cutoff; n <= a + b; ++n) {
                    const int mid = a + b - n - 1;      // weight of u_n v
                    if (mid > cutoff || mid - j > cutoff)
                        continue;
                    ModeResult lhs;
                    ModeResult unv = alg.mode(u, n, v);
                    ModeResult t1 = sl2_action(alg, j, unv.value);
                    ModeResult ljv = alg.sl2_action(j, v);
                    ModeResult t2 = mode_action(alg, unit(u), n, ljv.value);
                    lhs.value = t1.value - t2.value;
                    lhs.overflow = unv.overflow || t1.overflow || ljv.overflow || t2.overflow;
                    ModeResult rhs;
                    for (int k = 0; k <= j + 1; ++k) {
                        ModeResult lu = alg.sl2_action(k - 1, u);
                        ModeResult term = mode_action(alg, lu.value, n + j + 1 - k, unit(v));
                        rhs.value.add_scaled(term.value, binom(j + 1, k));
                        rhs.overflow |= lu.overflow || term.overflow;
                    }
                    std::ostringstream os;
                    os << "[L(" << j << "), " << alg.name(u) << "_" << n << "] " << alg.name(v);
                    if (!ck.expect("sl2-bracket", lhs, rhs, os.str()))
                        return ck.report;
                }
            }
            if (!window.borcherds)
                continue;
            // component Borcherds identity on (u, v, w)
            for (BasisId w = 0; w < alg.dim(); ++w) {
                if (alg.weight(w) > ww)
                    continue;
                if (auto where = kernel.check(u, v, w)) {
                    ck.report.checks["borcherds"] += kernel.count;
                    ck.fail("borcherds", *where);
                    return ck.report;
                }
            }
        }
    }
    ck.report.checks["borcherds"] += kernel.count;
    return ck.report;
}

} // namespace vqm
