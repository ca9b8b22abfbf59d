#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "vqm/serialize.hpp"

namespace vqm {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Validated job description. Every field has a default; see README.md.
struct JobConfig {
    std::string algebra_kind = "heisenberg";     // heisenberg | trivial
    int cutoff = 6;

    std::string module_kind = "fock";            // fock | adjoint
    Rational lambda = Rational(0);
    int depth = 6;
    QuasiPolynomial f;

    std::string x_kind = "c2";                   // c1 | c2
    int x_weight = 4;

    std::string task = "verify";                 // verify | normalize | spanning | cofiniteness
    std::uint64_t seed = 1;
    int cases = 60;                              // randomized oracle cases per constructor (verify)
    int n = 2;                                   // spanning
    int n_max = 4;                               // cofiniteness
    std::string form;                            // normalize: diff0 | diff1, default from x_kind
    std::string ordering = "index";              // normalize, diff0: index | degree
    std::optional<json> expression;              // normalize input, default the empty word
    std::string input;                           // normalize input file, overrides expression
    std::string out = "out";
    std::string cache;                           // empty: no cache
    bool strict_overflow = false;
};

/// Throws ConfigError on unknown keys, wrong types or out-of-range values.
JobConfig parse_config(const json& j);
void validate(const JobConfig& c);

struct JobResult {
    int exit_code = 0;          // 0 ok, 1 invariant failure
    json report;
    std::string summary;
};

/// Runs the task deterministically and writes <out>/<task>.json and <out>/<task>.txt.
JobResult run(const JobConfig& c);

} // namespace vqm
