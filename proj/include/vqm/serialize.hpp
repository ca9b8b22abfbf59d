#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "vqm/algebra.hpp"
#include "vqm/cofinite.hpp"
#include "vqm/identities.hpp"
#include "vqm/modes.hpp"
#include "vqm/rewrite.hpp"

namespace vqm {

using json = nlohmann::json;

/// {"terms": [[i, j, "num/den"], ...]}; loading rejects a_00 != 1.
json to_json(const QuasiPolynomial& f);
QuasiPolynomial quasi_poly_from_json(const json& j);

/// [{"coeff": "num/den", "word": [["genId", n], ...]}, ...] with algebra basis names as ids.
json to_json(const AlgebraInstance& alg, const Expression& e);
Expression expression_from_json(const AlgebraInstance& alg, const json& j);

/// {identity, f, parameters, window, status, mismatch?}
json to_json(const ResidueReport& r);
json to_json(const CoefficientTable& t);
json to_json(const AxiomReport& r);
json to_json(const AnnihilationCertificate& c, const QuasimoduleInstance& qm);
/// {subspace, n, T, length_bound, table: {depth: [dim W_d, dim C_n(W)_d, dim quotient_d]}, ...}
json to_json(const CnQuotientReport& r);
json to_json(const CofiniteEquivalenceReport& r);
json to_json(const NormalizationTrace& t);

/// Structure constants and sl(2) tables.
json algebra_tables(const AlgebraInstance& alg);
std::shared_ptr<const AlgebraInstance> algebra_from_tables(const json& j);

/// Canonical byte form used for hashing and for artifacts.
std::string canonical_dump(const json& j);

enum class CacheOutcome { Built, Loaded, Rebuilt };

struct CachedAlgebra {
    std::shared_ptr<const AlgebraInstance> alg;
    CacheOutcome outcome = CacheOutcome::Built;
    std::filesystem::path file;
};

/// Loads the Heisenberg or trivial algebra tables from dir, keyed by
/// (kind, cutoff). The stored content hash is validated on load; a missing or
/// mismatching entry is rebuilt and rewritten.
CachedAlgebra cached_algebra(const std::filesystem::path& dir, const std::string& kind, int cutoff);

} // namespace vqm
