#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vqm/algebra.hpp"

namespace vqm {

struct ModuleBasisElement {
    std::string id;
    int depth = 0;       // weight minus the lowest weight
};

/// Truncated graded quasimodule over an AlgebraInstance.
///
/// Basis vectors carry rational weights lowestWeight + depth with depth in
/// [0, depthCap]. The action u_n w is supplied by an oracle callback and
/// memoized; it is queried only when the result depth lies in [0, depthCap].
/// The quasi-locality polynomial is supplied per ordered pair of algebra
/// basis vectors (u, v), defaulting to a single f.
class QuasimoduleInstance {
public:
    using ActionFn = std::function<GradedVector(BasisId gen, int n, BasisId vec)>;

    QuasimoduleInstance(std::shared_ptr<const AlgebraInstance> alg, std::string kind, Rational lowestWeight,
                        int depthCap, std::vector<ModuleBasisElement> basis, ActionFn action,
                        AlgebraInstance::Sl2Tables sl2, QuasiPolynomial f);

    const AlgebraInstance& algebra() const { return *alg_; }
    std::shared_ptr<const AlgebraInstance> algebra_ptr() const { return alg_; }
    const std::string& kind() const { return kind_; }
    const Rational& lowest_weight() const { return lowest_; }
    int depth_cap() const { return depth_cap_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<ModuleBasisElement>& basis() const { return basis_; }
    int depth(BasisId id) const { return basis_.at(id).depth; }
    Rational weight(BasisId id) const { return lowest_ + Rational(depth(id)); }
    const std::string& name(BasisId id) const { return basis_.at(id).id; }
    BasisId index_of(const std::string& id) const;
    const std::vector<BasisId>& of_depth(int d) const;
    /// Lowest-depth basis vector (the generating vector of the Fock modules).
    BasisId lowest_vector() const;

    const QuasiPolynomial& default_f() const { return f_; }
    /// f for the ordered pair (u, v); the default unless overridden.
    const QuasiPolynomial& f_for(BasisId u, BasisId v) const;
    void set_f(BasisId u, BasisId v, QuasiPolynomial f);
    /// Same tables, different recorded default f.
    QuasimoduleInstance with_f(QuasiPolynomial f) const;

    /// u_n w for an algebra basis vector u and a module basis vector w.
    ModeResult mode(BasisId u, int n, BasisId w) const;
    ModeResult sl2_action(int j, BasisId w) const;
    const AlgebraInstance::Sl2Tables& sl2() const { return sl2_; }

    /// Depth of a homogeneous vector, nullopt for zero or inhomogeneous vectors.
    std::optional<int> depth_of(const GradedVector& v) const;

private:
    struct Shared {
        std::mutex mu;
        std::map<AlgebraInstance::YKey, GradedVector> memo;
    };

    std::shared_ptr<const AlgebraInstance> alg_;
    std::string kind_;
    Rational lowest_;
    int depth_cap_ = 0;
    std::vector<ModuleBasisElement> basis_;
    ActionFn action_;
    AlgebraInstance::Sl2Tables sl2_;
    QuasiPolynomial f_;
    std::map<std::pair<BasisId, BasisId>, QuasiPolynomial> f_override_;
    std::unordered_map<std::string, BasisId> by_name_;
    std::vector<std::vector<BasisId>> by_depth_;
    std::shared_ptr<Shared> shared_;
};

/// Bilinear extension: u is an algebra vector, w a module vector.
ModeResult module_action(const QuasimoduleInstance& qm, const GradedVector& u, int n, const GradedVector& w);
ModeResult module_sl2_action(const QuasimoduleInstance& qm, int j, const GradedVector& w);

/// V as a module over itself, truncated at the algebra cutoff.
QuasimoduleInstance adjoint_module(std::shared_ptr<const AlgebraInstance> alg, QuasiPolynomial f = {});

} // namespace vqm
