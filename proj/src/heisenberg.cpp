#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "vqm/heisenberg.hpp"

namespace vqm {

namespace {

struct PartitionBasis {
    std::vector<Partition> parts;
    std::vector<BasisElement> elems;
    std::map<Partition, BasisId> index;

    explicit PartitionBasis(int cap) {
        for (int k = 0; k <= cap; ++k)
            for (auto& p : partitions_of(k)) {
                index.emplace(p, static_cast<BasisId>(parts.size()));
                elems.push_back({partition_id(p), k});
                parts.push_back(std::move(p));
            }
    }

    GradedVector to_vector(const fock::State& s) const {
        GradedVector v;
        for (const auto& [p, c] : s) {
            auto it = index.find(p);
            if (it == index.end())
                throw std::logic_error("Fock state outside the truncated basis: " + partition_id(p));
            v.add(it->second, c);
        }
        return v;
    }
};

AlgebraInstance::Sl2Tables fock_sl2(const PartitionBasis& pb, const Rational& lambda, int cap) {
    AlgebraInstance::Sl2Tables t;
    for (const auto& p : pb.parts) {
        fock::State one{{p, Rational(1)}};
        const int d = partition_weight(p);
        t.l0.push_back(pb.to_vector(fock::virasoro(0, one, lambda)));
        t.l1.push_back(pb.to_vector(fock::virasoro(1, one, lambda)));
        if (d + 1 <= cap)
            t.lm1.push_back(pb.to_vector(fock::virasoro(-1, one, lambda)));
        else
            t.lm1.push_back(std::nullopt);
    }
    return t;
}

} // namespace

std::shared_ptr<const AlgebraInstance> build_heisenberg(int cutoff) {
    if (cutoff < 2)
        throw std::invalid_argument("build_heisenberg: cutoff must be at least 2");
    PartitionBasis pb(cutoff);
    const Rational zero(0);
    AlgebraInstance::YTable y;
    for (BasisId u = 0; u < pb.parts.size(); ++u)
        for (BasisId v = 0; v < pb.parts.size(); ++v) {
            const int a = pb.elems[u].weight, b = pb.elems[v].weight;
            for (int n = a + b - 1 - cutoff; n <= a + b - 1; ++n) {
                auto s = fock::vertex_mode(pb.parts[u], n, pb.parts[v], zero, cutoff);
                if (!s.empty())
                    y.emplace(AlgebraInstance::YKey{u, n, v}, pb.to_vector(s));
            }
        }
    auto sl2 = fock_sl2(pb, zero, cutoff);
    return std::make_shared<const AlgebraInstance>("heisenberg", cutoff, pb.elems, pb.index.at({}), std::move(y),
                                                   std::move(sl2));
}

std::shared_ptr<const AlgebraInstance> build_trivial_algebra() {
    AlgebraInstance::YTable y;
    y.emplace(AlgebraInstance::YKey{0, -1, 0}, GradedVector::unit(0));
    AlgebraInstance::Sl2Tables sl2;
    sl2.lm1.push_back(GradedVector{});
    sl2.l0.push_back(GradedVector{});
    sl2.l1.push_back(GradedVector{});
    return std::make_shared<const AlgebraInstance>("trivial", 0, std::vector<BasisElement>{{"[]", 0}}, 0,
                                                   std::move(y), std::move(sl2));
}

QuasimoduleInstance build_fock_quasimodule(std::shared_ptr<const AlgebraInstance> alg, const Rational& lambda,
                                           const QuasiPolynomial& f, int cutoffDepth) {
    if (!alg || alg->kind() != "heisenberg")
        throw std::invalid_argument("build_fock_quasimodule: requires a Heisenberg algebra instance");
    if (cutoffDepth < 0)
        throw std::invalid_argument("build_fock_quasimodule: negative depth");
    auto pb = std::make_shared<PartitionBasis>(cutoffDepth);
    std::vector<Partition> gens;
    for (const auto& b : alg->basis())
        gens.push_back(parse_partition_id(b.id));
    std::vector<ModuleBasisElement> basis;
    for (const auto& e : pb->elems)
        basis.push_back({e.id, e.weight});
    auto action = [pb, gens = std::move(gens), lambda, cutoffDepth](BasisId g, int n, BasisId w) {
        return pb->to_vector(fock::vertex_mode(gens.at(g), n, pb->parts.at(w), lambda, cutoffDepth));
    };
    auto sl2 = fock_sl2(*pb, lambda, cutoffDepth);
    Rational lowest = lambda * lambda * Rational(1, 2);
    std::ostringstream kind;
    kind << "fock(" << lambda.str() << ")";
    return QuasimoduleInstance(std::move(alg), kind.str(), lowest, cutoffDepth, std::move(basis), action,
                               std::move(sl2), f);
}

} // namespace vqm
