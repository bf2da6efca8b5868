#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "detsum/error.hpp"
#include "detsum/identities.hpp"
#include "detsum/search.hpp"
#include "fuzz.hpp"
#include "serialize.hpp"

namespace detsum::cli {

namespace {

struct Common {
  std::string output = "json";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool timing = false;
};

struct Params {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t bound = 0;
  bool skip_hypothesis = false;
  std::string input_path;
  std::string input_json;
  std::string modulus;
  std::string m1;
  std::string m2;
  std::string instance = "all";
  std::vector<long> fields;
  std::uint64_t trials = 100;
  std::vector<std::string> suites;
};

struct Outcome {
  std::string status;
  Json result;
  Json inputs;  // canonical form of everything the result depends on
};

using Handler = std::function<Outcome(const Params&, ExecutionOptions)>;

Integer parse_integer_flag(const std::string& text, const char* flag) {
  try {
    return integer_from_json(Json(text), flag);
  } catch (const SchemaError&) {
    throw SchemaError(std::string(flag) + ": expected an integer, got \"" + text + "\"");
  }
}

Json read_input(const Params& p) {
  if (!p.input_path.empty()) {
    std::ifstream in(p.input_path, std::ios::binary);
    if (!in) throw SchemaError("--input: cannot read \"" + p.input_path + "\"");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_document(text.str());
  }
  if (!p.input_json.empty()) return parse_document(p.input_json);
  throw SchemaError("one of --input or --json is required");
}

MatrixDocument read_matrices(const Params& p) {
  MatrixDocument doc = load_matrices(read_input(p));
  if (doc.matrices.empty()) throw SchemaError("matrices: at least one matrix is required");
  return doc;
}

Hypothesis hypothesis_of(const Params& p) {
  return p.skip_hypothesis ? Hypothesis::Skip : Hypothesis::Enforce;
}

std::string verdict(bool claimed, bool ok) {
  if (!claimed) return "none";
  return ok ? "holds" : "violated";
}

Outcome identity_outcome(const IdentityReport& r, const Params& p) {
  Json result;
  result["identity"] = r.identity_name;
  result["m"] = r.m;
  result["n"] = r.n;
  result["term_count"] = r.term_count;
  result["holds"] = r.holds;
  result["residual"] = r.residual.to_string();
  Json inputs{{"m", p.m}, {"n", p.n}, {"hypothesis_check", !p.skip_hypothesis}};
  return {verdict(r.m > r.n, r.holds), std::move(result), std::move(inputs)};
}

Outcome product_identity_cmd(const Params& p, ExecutionOptions exec) {
  return identity_outcome(verify_product_identity(p.m, p.n, hypothesis_of(p), exec), p);
}

Outcome generic_identity_cmd(const Params& p, ExecutionOptions exec) {
  return identity_outcome(verify_generic_det_identity(p.m, p.n, hypothesis_of(p), exec), p);
}

Outcome alt_sum(const Params& p, ExecutionOptions exec) {
  const MatrixDocument doc = read_matrices(p);
  const RingElement sum = alternating_subset_det_sum(doc.matrices, exec);
  const std::size_t m = doc.matrices.size();
  Json result{{"ring", doc.ring.to_string()}, {"n", doc.n}, {"m", m}, {"sum", element_to_json(sum)}};
  return {verdict(m > doc.n, sum.is_zero()), std::move(result), matrices_to_json(doc)};
}

Outcome certificate(const Params& p, ExecutionOptions) {
  std::optional<MatrixDocument> doc;
  std::size_t m = p.m;
  std::size_t n = p.n;
  if (!p.input_path.empty() || !p.input_json.empty()) {
    doc = read_matrices(p);
    m = doc->matrices.size();
    n = doc->n;
  } else if (m == 0 || n == 0) {
    throw SchemaError("certificate needs --m and --n, or a matrix document");
  }
  const auto terms = det_membership_certificate(m, n);
  Json result{{"m", m}, {"n", n}};
  Json rows = Json::array();
  for (const auto& t : terms) {
    rows.push_back({{"subset", t.subset.indices()}, {"coefficient", integer_to_json(t.coefficient)}});
  }
  result["terms"] = std::move(rows);
  bool ok = true;
  Json inputs{{"m", m}, {"n", n}};
  if (doc) {
    const RingElement full = det(subset_sum(doc->matrices, SubsetMask::full(m)));
    const RingElement expanded = expand_certificate(terms, doc->matrices);
    ok = full == expanded;
    result["full_det"] = element_to_json(full);
    result["expanded"] = element_to_json(expanded);
    result["matches"] = ok;
    inputs = matrices_to_json(*doc);
  }
  return {ok ? "holds" : "violated", std::move(result), std::move(inputs)};
}

Outcome perturb(const Params& p, ExecutionOptions exec) {
  const MatrixDocument doc = read_matrices(p);
  if (!doc.base) throw SchemaError("document: missing field \"B\"");
  const RingElement residual = perturbation_identity_residual(doc.matrices, *doc.base);
  const RingElement det_b = det(*doc.base);
  const auto witness = find_perturbing_subset(doc.matrices, *doc.base, exec);
  const bool ok = residual.is_zero() && (det_b.is_zero() || witness.has_value());
  Json result{{"residual", element_to_json(residual)},
              {"holds", residual.is_zero()},
              {"det_B", element_to_json(det_b)},
              {"witness", mask_to_json(witness)}};
  return {ok ? "holds" : "violated", std::move(result), matrices_to_json(doc)};
}

Outcome homogeneous(const Params& p, ExecutionOptions) {
  const HomogeneousDocument doc = load_homogeneous(read_input(p));
  const RingElement sum = homogeneous_alternating_sum(doc.poly, doc.vectors, doc.ring);
  const std::uint64_t degree = is_homogeneous(doc.poly).value_or(0);
  const std::size_t m = doc.vectors.size();
  Json result{{"degree", degree}, {"m", m}, {"sum", element_to_json(sum)}};
  return {verdict(m > degree, sum.is_zero()), std::move(result), homogeneous_to_json(doc)};
}

Outcome simplex(const Params& p, ExecutionOptions) {
  const MatrixDocument doc = read_matrices(p);
  const SimplexReport report = simplex_centroid_check(doc.matrices);
  Json failing = Json::array();
  for (const auto& s : report.failing_subsets) failing.push_back(s.indices());
  Json result{{"premise_holds", report.premise_holds},
              {"centroid_on_cone", report.centroid_on_cone},
              {"failing_subsets", std::move(failing)}};
  return {verdict(report.premise_holds, report.centroid_on_cone), std::move(result),
          matrices_to_json(doc)};
}

Outcome search_subsum(const Params& p, ExecutionOptions exec) {
  const MatrixDocument doc = read_matrices(p);
  const std::size_t m = doc.matrices.size();
  const auto witness = find_invertible_subsum(doc.matrices, p.bound, exec);
  const bool total_invertible = is_invertible(subset_sum(doc.matrices, SubsetMask::full(m)));
  const bool guaranteed = doc.ring.is_local() && total_invertible && p.bound >= doc.n;
  std::string status = witness ? "found" : "none";
  if (witness && !is_invertible(subset_sum(doc.matrices, *witness))) status = "violated";
  if (!witness && guaranteed) status = "violated";
  Json result{{"bound", p.bound},
              {"witness", mask_to_json(witness)},
              {"size", witness ? Json(witness->cardinality()) : Json(nullptr)},
              {"total_invertible", total_invertible},
              {"ring_is_local", doc.ring.is_local()}};
  Json inputs = matrices_to_json(doc);
  inputs["bound"] = p.bound;
  return {status, std::move(result), std::move(inputs)};
}

Outcome local_counterexample(const Params& p, ExecutionOptions exec) {
  const Integer modulus = parse_integer_flag(p.modulus, "--N");
  const Integer m1 = parse_integer_flag(p.m1, "--m1");
  const Integer m2 = parse_integer_flag(p.m2, "--m2");
  MatrixDocument doc{RingDescriptor::mod_ring(modulus), p.n, {}, std::nullopt};
  doc.matrices = local_counterexample_matrices(modulus, m1, m2, p.n);
  const bool total_is_identity =
      subset_sum(doc.matrices, SubsetMask::full(doc.matrices.size())) == SquareMatrix::identity(doc.ring, p.n);
  const auto witness = find_invertible_subsum(doc.matrices, p.n, exec);
  Json result{{"ring", doc.ring.to_string()},
              {"total_is_identity", total_is_identity},
              {"witness_within_n", mask_to_json(witness)},
              {"document", matrices_to_json(doc)}};
  Json inputs{{"N", integer_to_json(modulus)}, {"m1", integer_to_json(m1)}, {"m2", integer_to_json(m2)},
              {"n", p.n}};
  return {total_is_identity && !witness ? "holds" : "violated", std::move(result), std::move(inputs)};
}

Outcome ideal_chain_cmd(const Params& p, ExecutionOptions) {
  const MatrixDocument doc = read_matrices(p);
  const IdealChain chain = ideal_chain(doc.matrices);
  Json gens = Json::array();
  for (const auto& g : chain.generators) gens.push_back(integer_to_json(g));
  const bool stable = chain.stabilizes_at(doc.n);
  const bool ascending = chain.is_ascending();
  Json result{{"modulus", integer_to_json(chain.modulus)},
              {"generators", std::move(gens)},
              {"n", doc.n},
              {"stabilizes_at_n", stable},
              {"ascending", ascending}};
  return {stable && ascending ? "holds" : "violated", std::move(result), matrices_to_json(doc)};
}

Outcome semilocal_search(const Params& p, ExecutionOptions exec) {
  const SemilocalInstance inst = load_semilocal(read_input(p));
  const auto witness = semilocal_find_unit_subsum(inst, p.bound, exec);
  RingElement total = inst.ring.zero();
  for (const auto& x : inst.elements) total += x;
  const bool guaranteed =
      inst.guarantee_applies() && is_unit(total) && p.bound >= inst.n_components();
  std::string status = witness ? "found" : (guaranteed ? "violated" : "none");
  Json result{{"bound", p.bound},
              {"witness", mask_to_json(witness)},
              {"size", witness ? Json(witness->cardinality()) : Json(nullptr)},
              {"total_is_unit", is_unit(total)},
              {"guarantee_applies", inst.guarantee_applies()}};
  Json inputs = semilocal_to_json(inst);
  inputs["bound"] = p.bound;
  return {status, std::move(result), std::move(inputs)};
}

Outcome embed(const Params& p, ExecutionOptions) {
  const SemilocalInstance inst = load_semilocal(read_input(p));
  MatrixDocument doc{inst.ring.components().front(), inst.n_components(),
                     embed_product_to_matrices(inst), std::nullopt};
  bool preserved = true;
  for (std::size_t i = 0; i < inst.elements.size(); ++i) {
    preserved = preserved && is_unit(inst.elements[i]) == is_invertible(doc.matrices[i]);
  }
  Json result{{"units_preserved", preserved}, {"document", matrices_to_json(doc)}};
  return {preserved ? "holds" : "violated", std::move(result), semilocal_to_json(inst)};
}

Json describe_instance(const std::string& name, const SemilocalInstance& inst) {
  RingElement total = inst.ring.zero();
  for (const auto& x : inst.elements) total += x;
  std::optional<SubsetMask> smallest;
  for (std::size_t k = 1; k <= inst.elements.size() && !smallest; ++k) {
    smallest = semilocal_find_unit_subsum(inst, k);
  }
  Json j{{"name", name}};
  j.update(semilocal_to_json(inst));
  j["total_is_unit"] = is_unit(total);
  j["smallest_unit_subsum"] = mask_to_json(smallest);
  return j;
}

Outcome mixed_examples_cmd(const Params& p, ExecutionOptions) {
  if (p.instance != "a" && p.instance != "b" && p.instance != "all") {
    throw SchemaError("--instance: expected a, b or all");
  }
  const auto examples = mixed_characteristic_examples();
  Json instances = Json::array();
  if (p.instance != "b") instances.push_back(describe_instance("a", examples[0]));
  if (p.instance != "a") instances.push_back(describe_instance("b", examples[1]));
  return {"holds", Json{{"instances", std::move(instances)}}, Json{{"instance", p.instance}}};
}

Outcome mine(const Params& p, ExecutionOptions) {
  if (p.fields.empty()) throw SchemaError("--fields: at least one prime is required");
  std::vector<RingDescriptor> fields;
  for (long q : p.fields) fields.push_back(RingDescriptor::prime_field(q));
  const auto found = mine_mixed_characteristic(fields, p.m, p.bound);
  const SemilocalInstance probe = SemilocalInstance::make(RingDescriptor::product(fields), {});
  const bool guaranteed = probe.guarantee_applies() && p.bound >= fields.size();
  Json instances = Json::array();
  for (const auto& inst : found) instances.push_back(semilocal_to_json(inst)["elements"]);
  Json result{{"ring", probe.ring.to_string()},
              {"count", found.size()},
              {"guarantee_applies", probe.guarantee_applies()},
              {"instances", std::move(instances)}};
  std::string status = found.empty() ? "none" : (guaranteed ? "violated" : "found");
  Json inputs{{"fields", p.fields}, {"m", p.m}, {"bound", p.bound}};
  return {status, std::move(result), std::move(inputs)};
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact subset-sum determinant identities and searches", "detsum"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");

  Common common;
  Params params;
  app.add_option("--output", common.output, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", common.seed, "Seed for randomized runs")->envname("DETSUM_SEED");
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", common.timing, "Report elapsed_ms");

  std::map<const CLI::App*, std::pair<std::string, Handler>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[s] = {name, std::move(h)};
    return s;
  };
  auto with_mn = [&](CLI::App* s) {
    s->add_option("--m", params.m, "Family size")->required();
    s->add_option("--n", params.n, "Matrix size")->required();
    s->add_flag("--no-hypothesis-check", params.skip_hypothesis, "Allow m <= n");
  };
  auto with_input = [&](CLI::App* s) {
    auto* path = s->add_option("--input", params.input_path, "JSON document path");
    auto* inline_json = s->add_option("--json", params.input_json, "Inline JSON document");
    path->excludes(inline_json);
  };
  auto with_bound = [&](CLI::App* s) {
    s->add_option("--bound", params.bound, "Largest subset size")->required();
  };

  with_mn(sub("verify-lemma3", "Symbolic product identity", product_identity_cmd));
  with_mn(sub("verify-lemma2", "Symbolic generic determinant identity", generic_identity_cmd));
  with_input(sub("alt-sum", "Alternating subset determinant sum", alt_sum));
  {
    CLI::App* s = sub("certificate", "Full-sum determinant from small subsets", certificate);
    s->add_option("--m", params.m, "Family size");
    s->add_option("--n", params.n, "Matrix size");
    with_input(s);
  }
  with_input(sub("perturb", "Perturbation identity", perturb));
  with_input(sub("homogeneous", "Alternating sum of a homogeneous polynomial", homogeneous));
  with_input(sub("simplex", "Barycentric vertices on det = 0", simplex));
  {
    CLI::App* s = sub("search-subsum", "Smallest invertible subset sum", search_subsum);
    with_input(s);
    with_bound(s);
  }
  {
    CLI::App* s = sub("local-counterexample", "Family over Z/N with no small invertible subsum",
                      local_counterexample);
    s->add_option("--N", params.modulus, "Modulus")->required();
    s->add_option("--m1", params.m1, "Diagonal entry")->required();
    s->add_option("--m2", params.m2, "Scalar entry")->required();
    s->add_option("--n", params.n, "Matrix size")->required();
  }
  with_input(sub("ideal-chain", "Determinant ideals by subset size", ideal_chain_cmd));
  {
    CLI::App* s = sub("semilocal-search", "Smallest unit subset sum", semilocal_search);
    with_input(s);
    with_bound(s);
  }
  with_input(sub("embed", "Diagonal embedding into matrices", embed));
  sub("example8", "Mixed-characteristic families", mixed_examples_cmd)
      ->add_option("--instance", params.instance, "a, b or all");
  {
    CLI::App* s = sub("mine-mixed-char", "Exhaustive counterexample search", mine);
    s->add_option("--fields", params.fields, "Component primes")->required()->delimiter(',');
    s->add_option("--m", params.m, "Family size")->required();
    with_bound(s);
  }
  {
    CLI::App* s = sub("fuzz", "Randomized property suites", nullptr);
    s->add_option("--trials", params.trials, "Trials per suite");
    s->add_option("--suite", params.suites, "Run only these suites");
  }

  std::string name;
  auto emit = [&](const std::string& status, Json result, const Json& inputs,
                  std::optional<double> elapsed) {
    Json report;
    report["subcommand"] = name.empty() ? Json(nullptr) : Json(name);
    Json canonical{{"subcommand", name}, {"inputs", inputs}, {"seed", common.seed}};
    report["inputs_digest"] = fnv1a_hex(canonical.dump());
    report["status"] = status;
    report["result"] = std::move(result);
    report["elapsed_ms"] = elapsed ? Json(*elapsed) : Json(nullptr);
    if (common.output == "text") {
      for (const auto& [key, value] : report.items()) {
        if (key == "result" && value.is_object()) {
          for (const auto& [k, v] : value.items()) {
            out << "result." << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
          }
        } else {
          out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
      }
    } else {
      out << report.dump() << '\n';
    }
    if (status == "violated") return kExitViolated;
    if (status == "error") return kExitUsage;
    return kExitOk;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "detsum: " << e.what() << '\n';
    for (const auto* s : app.get_subcommands()) name = s->get_name();
    return emit("error", Json{{"code", "Usage"}, {"message", e.what()}}, Json(args), std::nullopt);
  }

  const CLI::App* chosen = app.get_subcommands().front();
  name = chosen->get_name();
  const ExecutionOptions exec{common.threads};
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&]() -> std::optional<double> {
    if (!common.timing) return std::nullopt;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  try {
    Outcome outcome;
    if (name == "fuzz") {
      const auto results = run_fuzz(common.seed, params.trials, params.suites, exec);
      Json suites = Json::array();
      std::uint64_t failures = 0;
      for (const auto& r : results) {
        failures += r.failures;
        suites.push_back({{"name", r.name},
                          {"trials", r.trials},
                          {"failures", r.failures},
                          {"first_failing_trial",
                           r.first_failing_trial ? Json(*r.first_failing_trial) : Json(nullptr)}});
      }
      outcome = {failures == 0 ? "holds" : "violated", Json{{"suites", std::move(suites)}},
                 Json{{"trials", params.trials}, {"suites", params.suites}}};
    } else {
      outcome = handlers.at(chosen).second(params, exec);
    }
    return emit(outcome.status, std::move(outcome.result), outcome.inputs, elapsed());
  } catch (const SchemaError& e) {
    err << "detsum " << name << ": " << e.what() << '\n';
    return emit("error", Json{{"code", "Schema"}, {"message", e.what()}}, Json(args), std::nullopt);
  } catch (const Error& e) {
    err << "detsum " << name << ": " << e.what() << '\n';
    const bool contract = e.code() == ErrorCode::ContractViolation;
    return emit(contract ? "violated" : "error",
                Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}}, Json(args),
                std::nullopt);
  }
}

}  // namespace detsum::cli
