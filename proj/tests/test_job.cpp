#include "doctest.h"

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "vqm/hash.hpp"
#include "vqm/job.hpp"

using namespace vqm;
using namespace vqm::testing;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("vqm-test-" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("json round trips") {
    for (const auto& f : wide_battery())
        CHECK(quasi_poly_from_json(to_json(f)) == f);
    CHECK_THROWS_AS(quasi_poly_from_json(json::parse(R"({"terms":[[1,0,"1/1"]]})")), std::invalid_argument);
    CHECK_THROWS_AS(quasi_poly_from_json(json::parse(R"({"terms":[[0,0,"1/1"],[0,0,"1/1"]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(quasi_poly_from_json(json::parse(R"([1])")), std::invalid_argument);

    auto alg = build_heisenberg(6);
    Rng rng(7);
    std::vector<BasisId> gens{alg->index_of("[1]"), alg->index_of("[2]"), alg->index_of("[1,1]")};
    for (int i = 0; i < 40; ++i) {
        Expression e;
        for (int t = 0; t < 3; ++t)
            e.add(random_word(rng, *alg, gens, 0, 4, -4, 3, 0, 12), Rational(rng.range(-5, 5), rng.range(1, 4)));
        CHECK(expression_from_json(*alg, to_json(*alg, e)) == e);
    }
    CHECK_THROWS_AS(expression_from_json(*alg, json::parse(R"([{"coeff":"1","word":[["[9]",0]]}])")),
                    std::invalid_argument);
    CHECK_THROWS_AS(expression_from_json(*alg, json::parse(R"([{"word":[]}])")), std::invalid_argument);

    auto back = algebra_from_tables(algebra_tables(*alg));
    CHECK(canonical_dump(algebra_tables(*back)) == canonical_dump(algebra_tables(*alg)));
    CHECK(check_axioms(*back).passed);
}

TEST_CASE("sha256 digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("algebra cache") {
    auto dir = scratch("cache");
    auto first = cached_algebra(dir, "heisenberg", 5);
    CHECK(first.outcome == CacheOutcome::Built);
    auto second = cached_algebra(dir, "heisenberg", 5);
    CHECK(second.outcome == CacheOutcome::Loaded);
    CHECK(canonical_dump(algebra_tables(*second.alg)) == canonical_dump(algebra_tables(*first.alg)));

    // flip one digit inside the tables
    std::string bytes = slurp(first.file);
    auto pos = bytes.find("\"tables\"");
    REQUIRE(pos != std::string::npos);
    pos = bytes.find_first_of("0123456789", bytes.find("\"y\"", pos));
    REQUIRE(pos != std::string::npos);
    bytes[pos] = bytes[pos] == '1' ? '2' : '1';
    std::ofstream(first.file, std::ios::binary) << bytes;
    auto rebuilt = cached_algebra(dir, "heisenberg", 5);
    CHECK(rebuilt.outcome == CacheOutcome::Rebuilt);
    CHECK(canonical_dump(algebra_tables(*rebuilt.alg)) == canonical_dump(algebra_tables(*first.alg)));
    CHECK(cached_algebra(dir, "heisenberg", 5).outcome == CacheOutcome::Loaded);

    std::ofstream(first.file, std::ios::binary) << "not json";
    CHECK(cached_algebra(dir, "heisenberg", 5).outcome == CacheOutcome::Rebuilt);

    auto bigger = cached_algebra(dir, "heisenberg", 6);
    CHECK(bigger.outcome == CacheOutcome::Built);
    CHECK(bigger.file != first.file);
    CHECK(std::filesystem::exists(first.file));
    CHECK(std::filesystem::exists(bigger.file));
    std::filesystem::remove_all(dir);
}

TEST_CASE("config parsing") {
    auto c = parse_config(json::parse(R"({"task":"spanning","module":{"lambda":"1/2","depth":4},"x":{"weight":3}})"));
    CHECK(c.task == "spanning");
    CHECK(c.lambda == Rational(1, 2));
    CHECK(c.depth == 4);
    CHECK(c.x_weight == 3);
    CHECK(c.cutoff == 6);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"tsk":"verify"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"module":{"depth":"six"}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"module":{"f":{"terms":[[0,0,"2"]]}}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"normalize":{"form":"diff0"}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"algebra":{"cutoff":40}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"([])")), ConfigError);
}

TEST_CASE("normalizing the empty word") {
    JobConfig c;
    c.task = "normalize";
    c.out = scratch("empty").string();
    c.expression = json::parse(R"([{"coeff":"1/1","word":[]}])");
    auto r = run(c);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("output") == r.report.at("input"));
    CHECK(r.report.at("trace").at("input_hash") == r.report.at("trace").at("output_hash"));
    std::filesystem::remove_all(c.out);
}

TEST_CASE("artifacts are deterministic") {
    for (const char* task : {"verify", "normalize", "spanning"}) {
        JobConfig c;
        c.task = task;
        c.cases = 12;
        c.seed = 99;
        c.lambda = Rational(1);
        c.expression = json::parse(R"([{"coeff":"3/2","word":[["[1]",-1],["[1]",-3],["[1]",-1]]}])");
        c.out = scratch("det-a").string();
        run(c);
        const auto a = slurp(std::filesystem::path(c.out) / (std::string(task) + ".json"));
        c.out = scratch("det-b").string();
        run(c);
        const auto b = slurp(std::filesystem::path(c.out) / (std::string(task) + ".json"));
        CHECK(a == b);
        CHECK_FALSE(a.empty());
    }
    std::filesystem::remove_all(scratch("det-a"));
    std::filesystem::remove_all(scratch("det-b"));
}

TEST_CASE("spanning task on the vacuum module") {
    JobConfig c = parse_config(json::parse(R"({"task":"spanning","x":{"weight":3},"module":{"depth":5}})"));
    c.out = scratch("span").string();
    auto r = run(c);
    CHECK(r.exit_code == 0);
    const auto& table = r.report.at("table");
    CHECK(table.size() == 6);
    CHECK(table.at("5") == json::array({7, 6, 1}));
    CHECK(r.report.at("words").size() == 4);
    std::filesystem::remove_all(c.out);
}

TEST_CASE("trivial algebra through the job runner") {
    JobConfig c = parse_config(json::parse(R"({"task":"cofiniteness","algebra":{"kind":"trivial"}})"));
    c.out = scratch("triv").string();
    CHECK(run(c).exit_code == 0);
    c.task = "verify";
    CHECK(run(c).exit_code == 0);
    std::filesystem::remove_all(c.out);
}
