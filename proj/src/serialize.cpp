#include "vqm/serialize.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "vqm/hash.hpp"
#include "vqm/heisenberg.hpp"

namespace vqm {

json to_json(const QuasiPolynomial& f) {
    json terms = json::array();
    for (const auto& [ij, c] : f.terms())
        terms.push_back({ij.first, ij.second, c.str()});
    return {{"terms", terms}};
}

QuasiPolynomial quasi_poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
        throw std::invalid_argument("quasi-polynomial: expected {\"terms\": [...]}");
    QuasiPolynomial::Terms terms;
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
            !t[2].is_string())
            throw std::invalid_argument("quasi-polynomial: each term is [i, j, \"num/den\"]");
        Rational c = Rational::parse(t[2].get<std::string>());
        auto [it, inserted] = terms.try_emplace({t[0].get<int>(), t[1].get<int>()}, c);
        if (!inserted)
            throw std::invalid_argument("quasi-polynomial: repeated exponent pair");
    }
    return QuasiPolynomial(std::move(terms));
}

json to_json(const AlgebraInstance& alg, const Expression& e) {
    json out = json::array();
    for (const auto& [w, c] : e.terms()) {
        json word = json::array();
        for (const auto& m : w)
            word.push_back({alg.name(m.gen), m.index});
        out.push_back({{"coeff", c.str()}, {"word", word}});
    }
    return out;
}

Expression expression_from_json(const AlgebraInstance& alg, const json& j) {
    if (!j.is_array())
        throw std::invalid_argument("expression: expected an array of terms");
    Expression e;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("coeff") || !t.contains("word") || !t.at("coeff").is_string() ||
            !t.at("word").is_array())
            throw std::invalid_argument("expression: each term is {\"coeff\": ..., \"word\": [...]}");
        Word w;
        for (const auto& m : t.at("word")) {
            if (!m.is_array() || m.size() != 2 || !m[0].is_string() || !m[1].is_number_integer())
                throw std::invalid_argument("expression: each mode is [\"genId\", n]");
            const auto name = m[0].get<std::string>();
            if (!alg.has(name))
                throw std::invalid_argument("expression: unknown generator " + name);
            w.push_back(mode_symbol(alg, alg.index_of(name), m[1].get<int>()));
        }
        e.add(w, Rational::parse(t.at("coeff").get<std::string>()));
    }
    return e;
}

json to_json(const CoefficientTable& t) {
    auto table = [](const CoefficientTable::Table& x) {
        json out = json::array();
        for (const auto& [k, c] : x)
            out.push_back({k.first, k.second, c.str()});
        return out;
    };
    return {{"window", t.window}, {"uv", table(t.uv)}, {"vu", table(t.vu)}, {"prod", table(t.prod)}};
}

json to_json(const ResidueReport& r) {
    json j{{"identity", r.identity},
           {"f", to_json(r.f)},
           {"parameters", {{"m", r.m}, {"n", r.n}}},
           {"window", r.window},
           {"status", r.passed ? "match" : "mismatch"},
           {"entries", r.entries}};
    if (!r.passed)
        j["mismatch"] = r.mismatch;
    return j;
}

json to_json(const AxiomReport& r) {
    json j{{"passed", r.passed}, {"checks", r.checks}};
    if (!r.passed)
        j["failure"] = {{"check", r.failed_check}, {"counterexample", r.counterexample}};
    return j;
}

json to_json(const AnnihilationCertificate& c, const QuasimoduleInstance& qm) {
    json wit = json::object();
    for (std::size_t i = 0; i < c.X.size(); ++i)
        wit[qm.algebra().name(c.X[i])] = c.witnesses[i] ? json(*c.witnesses[i]) : json("none");
    return {{"w", qm.name(c.w)}, {"T", c.T}, {"witnesses", wit}};
}

json to_json(const CnQuotientReport& r) {
    json table = json::object();
    json words = json::object();
    for (const auto& row : r.rows) {
        table[std::to_string(row.depth)] = {row.dim_w, row.dim_cn, row.dim_quotient};
        words[std::to_string(row.depth)] = {{"words", row.words}, {"spanned", row.spanned}};
    }
    return {{"subspace", r.subspace},     {"n", r.n},
            {"T", r.T},                   {"depth_cap", r.depth_cap},
            {"length_bound", r.length_bound}, {"max_word_length", r.max_word_length},
            {"table", table},             {"spanning", words},
            {"spanned", r.spanned},       {"stabilized", r.stabilized}};
}

json to_json(const CofiniteEquivalenceReport& r) {
    json q = json::array(), c = json::array();
    for (const auto& x : r.quotients)
        q.push_back(to_json(x));
    for (const auto& x : r.containment)
        c.push_back({{"n", x.n}, {"m", x.m}, {"Cn_in_Cm", x.n_in_m}, {"Cm_in_Cn", x.m_in_n}});
    return {{"quotients", q}, {"containment", c}, {"direction", r.direction}, {"verdicts_agree", r.verdicts_agree}};
}

json to_json(const NormalizationTrace& t) {
    std::map<std::string, std::size_t> rules;
    for (const auto& s : t.steps)
        ++rules[s.rule];
    return {{"steps", t.steps.size()},
            {"rules", rules},
            {"valid", t.valid()},
            {"input_hash", t.input_hash},
            {"output_hash", t.output_hash}};
}

namespace {

json vector_json(const AlgebraInstance& alg, const GradedVector& v) {
    json out = json::array();
    for (const auto& [id, c] : v)
        out.push_back({alg.name(id), c.str()});
    return out;
}

GradedVector vector_from(const std::unordered_map<std::string, BasisId>& ids, const json& j) {
    GradedVector v;
    for (const auto& e : j)
        v.add(ids.at(e.at(0).get<std::string>()), Rational::parse(e.at(1).get<std::string>()));
    return v;
}

} // namespace

json algebra_tables(const AlgebraInstance& alg) {
    json basis = json::array();
    for (const auto& b : alg.basis())
        basis.push_back({b.id, b.weight});
    json y = json::array();
    for (const auto& [key, v] : alg.y_table())
        y.push_back({alg.name(std::get<0>(key)), std::get<1>(key), alg.name(std::get<2>(key)), vector_json(alg, v)});
    auto sl2 = [&](const std::vector<std::optional<GradedVector>>& t) {
        json out = json::array();
        for (const auto& v : t)
            out.push_back(v ? vector_json(alg, *v) : json(nullptr));
        return out;
    };
    const auto& s = alg.sl2();
    return {{"kind", alg.kind()},
            {"cutoff", alg.cutoff()},
            {"basis", basis},
            {"vacuum", alg.name(alg.vacuum())},
            {"y", y},
            {"sl2", {{"lm1", sl2(s.lm1)}, {"l0", sl2(s.l0)}, {"l1", sl2(s.l1)}}}};
}

std::shared_ptr<const AlgebraInstance> algebra_from_tables(const json& j) {
    std::vector<BasisElement> basis;
    std::unordered_map<std::string, BasisId> ids;
    for (const auto& b : j.at("basis")) {
        ids.emplace(b.at(0).get<std::string>(), static_cast<BasisId>(basis.size()));
        basis.push_back({b.at(0).get<std::string>(), b.at(1).get<int>()});
    }
    AlgebraInstance::YTable y;
    for (const auto& e : j.at("y"))
        y.emplace(AlgebraInstance::YKey{ids.at(e.at(0).get<std::string>()), e.at(1).get<int>(),
                                        ids.at(e.at(2).get<std::string>())},
                  vector_from(ids, e.at(3)));
    auto sl2 = [&](const json& t) {
        std::vector<std::optional<GradedVector>> out;
        for (const auto& v : t)
            out.push_back(v.is_null() ? std::nullopt : std::optional<GradedVector>(vector_from(ids, v)));
        return out;
    };
    AlgebraInstance::Sl2Tables s{sl2(j.at("sl2").at("lm1")), sl2(j.at("sl2").at("l0")), sl2(j.at("sl2").at("l1"))};
    return std::make_shared<const AlgebraInstance>(j.at("kind").get<std::string>(), j.at("cutoff").get<int>(),
                                                   std::move(basis), ids.at(j.at("vacuum").get<std::string>()),
                                                   std::move(y), std::move(s));
}

std::string canonical_dump(const json& j) { return j.dump(1) + "\n"; }

CachedAlgebra cached_algebra(const std::filesystem::path& dir, const std::string& kind, int cutoff) {
    auto build = [&]() {
        if (kind == "heisenberg")
            return build_heisenberg(cutoff);
        if (kind == "trivial")
            return build_trivial_algebra();
        throw std::invalid_argument("unknown algebra kind " + kind);
    };
    CachedAlgebra out;
    const std::string key = kind + "-" + std::to_string(kind == "trivial" ? 0 : cutoff);
    out.file = dir / (key + ".json");
    if (std::filesystem::exists(out.file)) {
        std::ifstream in(out.file, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            json j = json::parse(buf.str());
            const json& tables = j.at("tables");
            if (j.at("key").get<std::string>() == key &&
                j.at("sha256").get<std::string>() == sha256_hex(canonical_dump(tables))) {
                out.alg = algebra_from_tables(tables);
                out.outcome = CacheOutcome::Loaded;
                return out;
            }
        } catch (const std::exception&) {
            // unreadable entry: rebuilt below
        }
        std::cerr << "warning: cache entry " << out.file.string() << " failed validation; rebuilding\n";
        out.outcome = CacheOutcome::Rebuilt;
    }
    out.alg = build();
    json tables = algebra_tables(*out.alg);
    json entry{{"key", key}, {"sha256", sha256_hex(canonical_dump(tables))}, {"tables", tables}};
    std::filesystem::create_directories(dir);
    std::ofstream(out.file, std::ios::binary) << canonical_dump(entry);
    return out;
}

} // namespace vqm
