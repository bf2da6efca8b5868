#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/serialize.hpp"
#include "detsum/error.hpp"
#include "detsum/random.hpp"
#include "oracles.hpp"

using namespace detsum;
using namespace detsum::cli;
using namespace detsum::testing;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kZ6Family =
    R"({"ring":{"kind":"mod","N":6},"n":2,"matrices":[[[3,0],[0,0]],[[0,0],[0,3]],[[4,0],[0,4]]]})";

std::string canonical(const std::string& text) {
  return matrices_to_json(load_matrices(parse_document(text))).dump();
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    ::setenv(name, value, 1);
  }
  ~ScopedEnv() {
    if (old_) {
      ::setenv(name_, old_->c_str(), 1);
    } else {
      ::unsetenv(name_);
    }
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

}  // namespace

TEST(Cli, ProductIdentityHolds) {
  CliRun r = run({"verify-lemma3", "--m", "4", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  Json j = r.report();
  EXPECT_EQ(j["status"], "holds");
  EXPECT_EQ(j["result"]["term_count"], 16);
  EXPECT_EQ(j["result"]["residual"], "0");
}

TEST(Cli, ReportFieldOrder) {
  Json j = run({"verify-lemma3", "--m", "2", "--n", "1"}).report();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"subcommand", "inputs_digest", "status", "result",
                                            "elapsed_ms"}));
  EXPECT_TRUE(j["elapsed_ms"].is_null());
  EXPECT_EQ(j["inputs_digest"].get<std::string>().size(), 16u);
}

TEST(Cli, HypothesisViolationIsUsageError) {
  CliRun r = run({"verify-lemma2", "--m", "2", "--n", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report()["status"], "error");
  EXPECT_EQ(r.report()["result"]["code"], "HypothesisViolation");
}

TEST(Cli, SkippedHypothesisReportsNone) {
  CliRun r = run({"verify-lemma3", "--m", "2", "--n", "2", "--no-hypothesis-check"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["status"], "none");
  EXPECT_EQ(r.report()["result"]["residual"], "x0*x3 + x1*x2");
}

TEST(Cli, SearchOnZ6CounterexampleFindsNothing) {
  CliRun r = run({"search-subsum", "--json", kZ6Family, "--bound", "2"});
  EXPECT_EQ(r.code, 0);
  Json j = r.report();
  EXPECT_EQ(j["status"], "none");
  EXPECT_TRUE(j["result"]["witness"].is_null());
  EXPECT_EQ(j["result"]["total_invertible"], true);

  CliRun r3 = run({"search-subsum", "--json", kZ6Family, "--bound", "3"});
  EXPECT_EQ(r3.report()["status"], "found");
  EXPECT_EQ(r3.report()["result"]["witness"], Json::array({0, 1, 2}));
}

TEST(Cli, InputFromFile) {
  const std::string path = ::testing::TempDir() + "detsum_family.json";
  std::ofstream(path) << kZ6Family;
  CliRun from_file = run({"ideal-chain", "--input", path});
  CliRun inline_doc = run({"ideal-chain", "--json", kZ6Family});
  EXPECT_EQ(from_file.code, 0);
  EXPECT_EQ(from_file.out, inline_doc.out);
  EXPECT_EQ(from_file.report()["result"]["generators"], Json::array({0, 2, 1, 1}));
  EXPECT_EQ(run({"ideal-chain", "--input", path + ".missing"}).code, 1);
}

TEST(LoadMatrices, Examples) {
  MatrixDocument z6 = load_matrices(parse_document(kZ6Family));
  const auto r = zmod(6);
  ASSERT_EQ(z6.matrices.size(), 3u);
  EXPECT_EQ(z6.matrices[0], SquareMatrix::from_integers(r, {{3, 0}, {0, 0}}));
  EXPECT_EQ(z6.matrices[1], SquareMatrix::from_integers(r, {{0, 0}, {0, 3}}));
  EXPECT_EQ(z6.matrices[2], SquareMatrix::from_integers(r, {{4, 0}, {0, 4}}));

  MatrixDocument f7 = load_matrices(parse_document(R"({"ring":{"kind":"prime_field","p":7},"n":1,"matrices":[[[3]]]})"));
  ASSERT_EQ(f7.matrices.size(), 1u);
  EXPECT_EQ(f7.matrices[0](0, 0), field(7).from_integer(3));

  MatrixDocument prod = load_matrices(parse_document(
      R"({"ring":{"kind":"product","components":[{"kind":"prime_field","p":2},{"kind":"prime_field","p":3}]},)"
      R"("n":1,"matrices":[[[[1,2]]]]})"));
  EXPECT_EQ(prod.matrices[0](0, 0), tuple(product_of({2, 3}), {1, 2}));
}

TEST(LoadMatrices, EntriesAreReduced) {
  EXPECT_EQ(canonical(R"({"ring":{"kind":"mod","N":6},"n":1,"matrices":[[[-1]],[[13]]]})"),
            R"({"ring":{"kind":"mod","N":6},"n":1,"matrices":[[[5]],[[1]]]})");
  EXPECT_EQ(canonical(R"({"ring":{"kind":"rationals"},"n":1,"matrices":[[["2/4"]],[["6/3"]],[[-7]]]})"),
            R"({"ring":{"kind":"rationals"},"n":1,"matrices":[[["1/2"]],[[2]],[[-7]]]})");
}

TEST(LoadMatrices, SafeIntegerBoundary) {
  EXPECT_EQ(integer_to_json(Integer("9007199254740991")).dump(), "9007199254740991");
  EXPECT_EQ(integer_to_json(Integer("9007199254740992")).dump(), "\"9007199254740992\"");
  EXPECT_EQ(integer_to_json(Integer("-9007199254740992")).dump(), "\"-9007199254740992\"");
  EXPECT_EQ(integer_from_json(Json("123456789012345678901234567890"), "x"),
            Integer("123456789012345678901234567890"));
  EXPECT_EQ(canonical(R"({"ring":{"kind":"integers"},"n":1,"matrices":[[["42"]]]})"),
            R"({"ring":{"kind":"integers"},"n":1,"matrices":[[[42]]]})");
}

TEST(LoadMatrices, SchemaErrors) {
  const std::vector<std::string> bad{
      R"({"n":1,"matrices":[[[1]]]})",
      R"({"ring":{"kind":"integers"},"n":2,"matrices":[[[1]]]})",
      R"({"ring":{"kind":"integers"},"n":0,"matrices":[]})",
      R"({"ring":{"kind":"integers"},"n":65,"matrices":[]})",
      R"({"ring":{"kind":"octonions"},"n":1,"matrices":[[[1]]]})",
      R"({"ring":{"kind":"integers"},"n":1,"matrices":[[[1.5]]]})",
      R"({"ring":{"kind":"integers"},"n":1,"matrices":[[["1/2"]]]})",
      R"({"ring":{"kind":"rationals"},"n":1,"matrices":[[["1/0"]]]})",
      R"({"ring":{"kind":"product","components":[{"kind":"prime_field","p":2}]},"n":1,"matrices":[[[1]]]})",
  };
  for (const auto& text : bad) {
    EXPECT_THROW(load_matrices(parse_document(text)), SchemaError) << text;
    EXPECT_EQ(run({"alt-sum", "--json", text}).code, 1) << text;
  }
  EXPECT_THROW(load_matrices(parse_document(R"({"ring":{"kind":"prime_field","p":6},"n":1,"matrices":[]})")),
               Error);
  EXPECT_EQ(run({"alt-sum", "--json", R"({"ring":{"kind":"mod","N":1},"n":1,"matrices":[[[0]]]})"}).code, 1);
}

TEST(LoadMatrices, MalformedJsonReportsPosition) {
  try {
    parse_document(R"({"ring":)");
    FAIL() << "expected a SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("at byte 9"), std::string::npos) << e.what();
  }
  CliRun r = run({"alt-sum", "--json", R"({"ring": {"kind": "integers"},, "n": 1})"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("at byte 31"), std::string::npos) << r.err;
}

TEST(LoadMatrices, RoundTripIsCanonicalAndIdempotent) {
  Rng rng(51);
  const std::vector<RingDescriptor> rings{RingDescriptor::integers(),
                                          RingDescriptor::rationals(),
                                          field(2),
                                          field(101),
                                          zmod(6),
                                          zmod(1000000007LL * 3),
                                          product_of({2, 3, 5}),
                                          RingDescriptor::poly_over_z(3)};
  for (int t = 0; t < 300; ++t) {
    const auto& ring = rings[rng.below(rings.size())];
    const std::size_t n = 1 + rng.below(3);
    MatrixDocument doc{ring, n, {}, std::nullopt};
    for (std::size_t i = 0, m = 1 + rng.below(3); i < m; ++i) {
      doc.matrices.push_back(random_matrix(ring, n, rng, 1 + static_cast<std::int64_t>(rng.below(1000))));
    }
    if (rng.coin()) doc.base = random_matrix(ring, n, rng);
    const std::string once = matrices_to_json(doc).dump();
    const MatrixDocument loaded = load_matrices(parse_document(once));
    EXPECT_EQ(loaded.matrices, doc.matrices);
    EXPECT_EQ(loaded.base, doc.base);
    EXPECT_EQ(matrices_to_json(loaded).dump(), once);
  }
}

TEST(LoadMatrices, BigEntriesRoundTrip) {
  const Integer big = (Integer(1) << 80) + 7;
  MatrixDocument doc{RingDescriptor::integers(), 1, {}, std::nullopt};
  doc.matrices.push_back(SquareMatrix::from_integers(doc.ring, {{big}}));
  doc.matrices.push_back(SquareMatrix::from_integers(doc.ring, {{-big}}));
  const std::string text = matrices_to_json(doc).dump();
  EXPECT_NE(text.find("\"1208925819614629174706183\""), std::string::npos);
  EXPECT_EQ(load_matrices(parse_document(text)).matrices, doc.matrices);
}

TEST(Cli, Determinism) {
  CliRun a = run({"fuzz", "--trials", "20", "--seed", "7"});
  CliRun b = run({"fuzz", "--trials", "20", "--seed", "7"});
  CliRun c = run({"fuzz", "--trials", "20", "--seed", "8"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.report()["inputs_digest"], c.report()["inputs_digest"]);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  const std::vector<std::vector<std::string>> commands{
      {"fuzz", "--trials", "15", "--seed", "3"},
      {"search-subsum", "--json", kZ6Family, "--bound", "3"},
      {"alt-sum", "--json", kZ6Family},
      {"verify-lemma3", "--m", "6", "--n", "2"},
      {"verify-lemma2", "--m", "3", "--n", "2"},
      {"example8"},
  };
  for (auto args : commands) {
    const std::string single = run(args).out;
    args.insert(args.end(), {"--threads", "4"});
    EXPECT_EQ(run(args).out, single) << args.front();
  }
}

TEST(Cli, SeedFromEnvironmentAndFlagWins) {
  const std::string seven = run({"fuzz", "--trials", "5", "--seed", "7"}).out;
  const std::string nine = run({"fuzz", "--trials", "5", "--seed", "9"}).out;
  ScopedEnv env("DETSUM_SEED", "7");
  EXPECT_EQ(run({"fuzz", "--trials", "5"}).out, seven);
  EXPECT_EQ(run({"fuzz", "--trials", "5", "--seed", "9"}).out, nine);
}

TEST(Cli, UsageErrorsNameTheFlag) {
  CliRun unknown = run({"verify-lemma3", "--m", "4", "--n", "3", "--bogus"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.err.find("--bogus"), std::string::npos) << unknown.err;
  CliRun bad_value = run({"verify-lemma3", "--m", "four", "--n", "3"});
  EXPECT_EQ(bad_value.code, 1);
  EXPECT_NE(bad_value.err.find("--m"), std::string::npos) << bad_value.err;
  CliRun bad_output = run({"--output", "xml", "example8"});
  EXPECT_EQ(bad_output.code, 1);
  EXPECT_NE(bad_output.err.find("--output"), std::string::npos) << bad_output.err;
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"alt-sum"}).code, 1);
  EXPECT_EQ(run({"alt-sum", "--json", kZ6Family, "--input", "x.json"}).code, 1);
}

TEST(Cli, HelpExitsCleanly) {
  CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("search-subsum"), std::string::npos);
}

TEST(Cli, TextOutput) {
  CliRun r = run({"verify-lemma3", "--m", "3", "--n", "2", "--output", "text"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("subcommand: verify-lemma3\ninputs_digest: ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("status: holds\n"), std::string::npos);
  EXPECT_NE(r.out.find("result.residual: 0\n"), std::string::npos);
}

TEST(Cli, TimingIsOptIn) {
  Json j = run({"verify-lemma3", "--m", "3", "--n", "2", "--timing"}).report();
  EXPECT_TRUE(j["elapsed_ms"].is_number());
}

TEST(Cli, LocalCounterexample) {
  CliRun r = run({"local-counterexample", "--N", "6", "--m1", "3", "--m2", "4", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  Json j = r.report();
  EXPECT_EQ(j["status"], "holds");
  EXPECT_EQ(j["result"]["document"].dump(), canonical(kZ6Family));
  EXPECT_EQ(run({"local-counterexample", "--N", "6", "--m1", "2", "--m2", "5", "--n", "2"}).code, 1);
}

TEST(Cli, AltSumStatuses) {
  EXPECT_EQ(run({"alt-sum", "--json", kZ6Family}).report()["status"], "holds");
  Json small = run({"alt-sum", "--json", R"({"ring":{"kind":"integers"},"n":2,"matrices":[[[1,0],[0,1]]]})"}).report();
  EXPECT_EQ(small["status"], "none");
  EXPECT_EQ(small["result"]["sum"], -1);
}

TEST(Cli, Certificate) {
  Json plain = run({"certificate", "--m", "3", "--n", "2"}).report();
  EXPECT_EQ(plain["status"], "holds");
  EXPECT_EQ(plain["result"]["terms"].size(), 6u);
  Json with_family = run({"certificate", "--json", kZ6Family}).report();
  EXPECT_EQ(with_family["result"]["matches"], true);
  EXPECT_EQ(with_family["result"]["full_det"], 1);
  EXPECT_EQ(run({"certificate", "--m", "3"}).code, 1);
}

TEST(Cli, Perturb) {
  Json j = run({"perturb", "--json",
                R"({"ring":{"kind":"integers"},"n":2,"matrices":[[[1,0],[0,0]],[[0,0],[0,1]]],"B":[[2,1],[1,1]]})"})
               .report();
  EXPECT_EQ(j["status"], "holds");
  EXPECT_EQ(j["result"]["residual"], 0);
  EXPECT_EQ(j["result"]["det_B"], 1);
  EXPECT_EQ(j["result"]["witness"], Json::array({0}));
  EXPECT_EQ(run({"perturb", "--json", kZ6Family}).code, 1);
}

TEST(Cli, Homogeneous) {
  const std::string base =
      R"({"ring":{"kind":"integers"},"poly":{"vars":2,"terms":[[[2,0],1],[[1,1],1]]},"vectors":[[1,0],[1,0])";
  Json two = run({"homogeneous", "--json", base + "]}"}).report();
  EXPECT_EQ(two["status"], "none");
  EXPECT_EQ(two["result"]["sum"], 2);
  Json three = run({"homogeneous", "--json", base + ",[3,-2]]}"}).report();
  EXPECT_EQ(three["status"], "holds");
  EXPECT_EQ(three["result"]["sum"], 0);
  CliRun inhomogeneous = run({"homogeneous", "--json",
                           R"({"ring":{"kind":"integers"},"poly":{"vars":1,"terms":[[[2],1],[[0],1]]},"vectors":[]})"});
  EXPECT_EQ(inhomogeneous.code, 1);
  EXPECT_EQ(inhomogeneous.report()["result"]["code"], "NotHomogeneous");
}

TEST(Cli, Simplex) {
  Json j = run({"simplex", "--json",
                R"({"ring":{"kind":"rationals"},"n":2,"matrices":[[[0,0],[1,2]],[[0,0],["1/2",3]],[[0,0],[5,-1]]]})"})
               .report();
  EXPECT_EQ(j["status"], "holds");
  EXPECT_EQ(j["result"]["premise_holds"], true);
  Json none = run({"simplex", "--json",
                   R"({"ring":{"kind":"rationals"},"n":1,"matrices":[[[1]],[[-1]]]})"})
                  .report();
  EXPECT_EQ(none["status"], "none");
  EXPECT_EQ(none["result"]["failing_subsets"], Json::parse("[[0],[1]]"));
  EXPECT_EQ(run({"simplex", "--json", kZ6Family}).code, 1);
}

TEST(Cli, Semilocal) {
  const char* f55 =
      R"({"ring":{"kind":"product","components":[{"kind":"prime_field","p":5},{"kind":"prime_field","p":5}]},)"
      R"("elements":[[1,0],[0,1],[1,1]]})";
  Json j = run({"semilocal-search", "--json", f55, "--bound", "2"}).report();
  EXPECT_EQ(j["status"], "found");
  EXPECT_EQ(j["result"]["witness"], Json::array({2}));
  Json embedded = run({"embed", "--json", f55}).report();
  EXPECT_EQ(embedded["status"], "holds");
  EXPECT_EQ(embedded["result"]["document"]["matrices"][2], Json::parse("[[1,0],[0,1]]"));
  EXPECT_EQ(run({"semilocal-search", "--json", kZ6Family, "--bound", "2"}).code, 1);
}

TEST(Cli, MixedExamplesAndMiner) {
  Json e = run({"example8", "--instance", "a"}).report();
  ASSERT_EQ(e["result"]["instances"].size(), 1u);
  EXPECT_EQ(e["result"]["instances"][0]["elements"], Json::parse("[[0,1,1],[1,2,0],[1,2,0],[1,2,0]]"));
  EXPECT_EQ(e["result"]["instances"][0]["smallest_unit_subsum"], Json::array({0, 1, 2, 3}));
  EXPECT_EQ(run({"example8", "--instance", "c"}).code, 1);

  Json mined = run({"mine-mixed-char", "--fields", "2,3,5", "--m", "4", "--bound", "3"}).report();
  EXPECT_EQ(mined["status"], "found");
  bool hit = false;
  for (const auto& inst : mined["result"]["instances"]) hit = hit || inst == e["result"]["instances"][0]["elements"];
  EXPECT_TRUE(hit);
  Json equal_char = run({"mine-mixed-char", "--fields", "3,3,3", "--m", "4", "--bound", "3"}).report();
  EXPECT_EQ(equal_char["status"], "none");
  EXPECT_EQ(run({"mine-mixed-char", "--fields", "11", "--m", "2", "--bound", "1"}).code, 1);
}

TEST(Cli, FuzzSuiteSelection) {
  Json j = run({"fuzz", "--trials", "3", "--suite", "ring_axioms", "--suite", "simplex"}).report();
  ASSERT_EQ(j["result"]["suites"].size(), 2u);
  EXPECT_EQ(j["result"]["suites"][1]["name"], "simplex");
  EXPECT_EQ(run({"fuzz", "--suite", "nope"}).code, 1);
}
