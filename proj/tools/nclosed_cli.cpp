// nclosed - n-closed subsets, coset analysis and normality checks over
// finite groups given by name, permutation generators or Cayley table.
//
// Exit codes: 0 success, 1 input error, 2 verification found a violation.

#include <cstdint>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nclosed/closedness.hpp"
#include "nclosed/error.hpp"
#include "nclosed/harness.hpp"
#include "nclosed/normality.hpp"
#include "nclosed/parser.hpp"

namespace {

using nlohmann::json;
using namespace nclosed;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

struct Globals {
  std::string format = "text";
  std::size_t jobs = std::max(1U, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
};

bool as_json(const Globals& g) { return g.format == "json"; }

std::string set_text(const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + labels[i];
  return out + "}";
}

int cmd_check(const Globals& opt, const std::string& spec, const std::string& subset_spec,
              std::size_t n) {
  const FiniteGroup g = parse_group_spec(spec);
  const GSubset d = parse_subset_spec(subset_spec, g);
  const bool closed = is_n_closed(d, n);
  std::optional<std::vector<Index>> witness;
  if (!closed) witness = non_closure_witness(d, n);
  if (as_json(opt)) {
    json j = {{"group", spec}, {"subset", d.labels()}, {"n", n}, {"closed", closed}};
    if (witness) {
      std::vector<std::string> w;
      for (Index x : *witness) w.push_back(g.label(x));
      j["witness"] = w;
      j["product"] = g.label(std::accumulate(witness->begin() + 1, witness->end(),
                                             witness->front(),
                                             [&](Index a, Index b) { return g.mul(a, b); }));
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << n << "-closed: " << (closed ? "true" : "false") << "\n";
  if (witness) {
    Index p = witness->front();
    std::string text = g.label(p);
    for (std::size_t i = 1; i < witness->size(); ++i) {
      p = g.mul(p, (*witness)[i]);
      text += " * " + g.label((*witness)[i]);
    }
    std::cout << "witness: " << text << " = " << g.label(p) << " not in D\n";
  }
  return kExitOk;
}

int cmd_coset(const Globals& opt, const std::string& spec, const std::string& gens_spec,
              const std::string& rep_spec, std::optional<std::uint64_t> power,
              std::size_t verify_up_to) {
  const FiniteGroup g = parse_group_spec(spec);
  std::vector<Element> gens;
  for (Index x : parse_subset_spec(gens_spec, g).elements()) gens.push_back(g.element(x));
  const Subgroup h = generated_subgroup(gens);
  const Element a = parse_element(rep_spec, g);
  const CosetReport r = analyze_coset(a, h);
  json j = {{"group", spec},
            {"subgroup", h.carrier().labels()},
            {"rep", a.label()},
            {"coset", r.coset.labels()},
            {"commutes", r.commutes},
            {"leastExponent", r.least_exponent},
            {"leastClosedness", r.least_closedness ? json(*r.least_closedness) : json(nullptr)},
            {"violations", r.violations}};
  std::ostringstream text;
  text << "H = " << set_text(h.carrier().labels()) << "\n"
       << "aH = " << set_text(r.coset.labels()) << " with a = " << a.label() << "\n"
       << "aH = Ha: " << (r.commutes ? "true" : "false") << "\n"
       << "least t with a^t in H: " << r.least_exponent << "\n";
  if (!r.commutes) {
    text << "never m-closed (aH != Ha)\n";
    j["spectrum"] = nullptr;
  } else {
    const SpectrumDescription s = closedness_spectrum(a, h, verify_up_to);
    text << "least closedness k: " << *r.least_closedness << "\n"
         << "spectrum: m = 1 (mod " << s.step << "), m >= " << s.step + 1
         << "  (verified up to " << s.verified_up_to << ")\n";
    j["spectrum"] = {{"step", s.step}, {"offset", s.offset}, {"verifiedUpTo", s.verified_up_to}};
  }
  for (const auto& v : r.violations) text << "! " << v << "\n";
  if (power) {
    const PowerCoset pc = power_coset_closedness(a, h, *power);
    text << "a^" << *power << " H = " << set_text(pc.coset.labels()) << ": least closedness "
         << pc.closedness << "\n";
    j["power"] = {{"m", *power}, {"coset", pc.coset.labels()}, {"closedness", pc.closedness}};
  }
  if (as_json(opt))
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text.str();
  return kExitOk;
}

int cmd_scan(const Globals& opt, const std::string& spec, std::optional<std::size_t> max_n) {
  const FiniteGroup g = parse_group_spec(spec);
  const ScanReport r = scan_subsets(g, spec, max_n.value_or(2 * g.order() + 1), opt.jobs, opt.seed);
  if (as_json(opt))
    std::cout << to_json(r).dump(2) << "\n";
  else
    std::cout << to_text(r);
  return kExitOk;
}

std::vector<std::string> split_corpus(const std::vector<std::string>& flags) {
  std::vector<std::string> out;
  for (const auto& f : flags) {
    if (f == "default") {
      for (auto& s : default_corpus()) out.push_back(std::move(s));
      continue;
    }
    std::size_t start = 0;
    while (start <= f.size()) {
      const std::size_t end = std::min(f.find(';', start), f.size());
      std::string item = f.substr(start, end - start);
      const auto b = item.find_first_not_of(" \t");
      if (b != std::string::npos) out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
      start = end + 1;
    }
  }
  return out;
}

int cmd_verify(const Globals& opt, const std::vector<std::string>& corpus_flags, bool timing,
               std::size_t exhaustive_max_order) {
  VerifyOptions vo;
  vo.corpus = split_corpus(corpus_flags.empty() ? std::vector<std::string>{"default"}
                                                : corpus_flags);
  if (vo.corpus.empty()) throw Error(ErrorKind::SyntaxError, "empty corpus", 0);
  vo.seed = opt.seed;
  vo.jobs = opt.jobs;
  vo.exhaustive_max_order = exhaustive_max_order;
  const VerificationReport r = run_verification(vo);
  if (as_json(opt))
    std::cout << to_json(r, timing).dump(2) << "\n";
  else
    std::cout << to_text(r);
  return r.clean() ? kExitOk : kExitViolation;
}

int cmd_group(const Globals& opt, const std::string& spec, bool with_table) {
  const FiniteGroup g = parse_group_spec(spec);
  std::vector<std::uint64_t> orders;
  for (Index x = 0; x < g.order(); ++x) orders.push_back(g.element_order(x));
  json j = {{"group", spec},
            {"order", g.order()},
            {"abelian", g.is_abelian()},
            {"labels", std::vector<std::string>(g.labels().begin(), g.labels().end())},
            {"elementOrders", orders}};
  if (with_table) {
    json rows = json::array();
    for (Index x = 0; x < g.order(); ++x) {
      auto row = g.magma().row(x);
      rows.push_back(std::vector<Index>(row.begin(), row.end()));
    }
    j["table"] = rows;
  }
  if (as_json(opt)) {
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << spec << ": order " << g.order() << (g.is_abelian() ? ", abelian" : ", non-abelian")
            << "\n";
  for (Index x = 0; x < g.order(); ++x)
    std::cout << "  " << x << "  " << g.label(x) << "  order " << orders[x] << "\n";
  if (with_table) {
    for (Index x = 0; x < g.order(); ++x) {
      std::cout << " ";
      for (Index y = 0; y < g.order(); ++y) std::cout << " " << g.mul(x, y);
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_subgroups(const Globals& opt, const std::string& spec) {
  const FiniteGroup g = parse_group_spec(spec);
  const auto subgroups = enumerate_subgroups(g);
  json list = json::array();
  for (const auto& h : subgroups)
    list.push_back({{"order", h.order()},
                    {"index", index(h)},
                    {"normal", is_normal_classic(h)},
                    {"elements", h.carrier().labels()}});
  if (as_json(opt)) {
    std::cout << json{{"group", spec}, {"subgroups", list}}.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << spec << ": " << subgroups.size() << " subgroups\n";
  for (const auto& h : subgroups)
    std::cout << "  order " << h.order() << ", index " << index(h)
              << (is_normal_classic(h) ? ", normal    " : ", not normal") << "  "
              << set_text(h.carrier().labels()) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nclosed: n-closed subsets and coset-based normality checks over finite groups.\n\n"
      "Group specs: Z<n>, S<n> (n <= 6), D<n> (order 2n), Q8, A x B (direct product),\n"
      "perm(<degree>): <perm>, <perm>, ... and table:<path> (JSON Cayley table).\n"
      "Permutations use cycle notation composed right-to-left: \"(1 2)(2 3)\" applies\n"
      "(2 3) first; x*y means apply y, then x."};
  app.require_subcommand(1);
  app.fallthrough();

  Globals opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for sampled checks")->capture_default_str();

  std::string group_spec, subset_spec, subgroup_spec, rep_spec;
  std::size_t n = 3;
  std::optional<std::uint64_t> power;
  std::optional<std::size_t> max_n;
  std::size_t verify_up_to = 20;
  std::vector<std::string> corpus;
  bool timing = false, with_table = false;
  std::size_t exhaustive_max_order = 10;

  auto* check = app.add_subcommand("check", "Decide whether a subset is n-closed");
  check->add_option("group", group_spec, "Group spec")->required();
  check->add_option("--subset", subset_spec, "Comma-separated element labels")->required();
  check->add_option("--n", n, "Arity n >= 2")->check(CLI::Range(2, 1 << 20))->capture_default_str();

  auto* coset = app.add_subcommand("coset", "Analyze the left coset aH");
  coset->add_option("group", group_spec, "Group spec")->required();
  coset->add_option("--subgroup", subgroup_spec, "Generators of H (element labels)")->required();
  coset->add_option("--rep", rep_spec, "Coset representative a")->required();
  coset->add_option("--power", power, "Also analyze a^m H")->check(CLI::PositiveNumber);
  coset->add_option("--verify-up-to", verify_up_to, "Engine check bound for the spectrum")
      ->capture_default_str();

  auto* scan = app.add_subcommand("scan", "Classify every nonempty subset (order <= 14)");
  scan->add_option("group", group_spec, "Group spec")->required();
  scan->add_option("--max-n", max_n, "Largest n tried (default 2|G|+1)");

  auto* verify = app.add_subcommand("verify", "Run every check over a corpus of groups");
  verify->add_option("--corpus", corpus,
                     "'default' or ';'-separated group specs (repeatable)");
  verify->add_flag("--timing", timing, "Include elapsedMs in JSON output");
  verify->add_option("--exhaustive-max-order", exhaustive_max_order,
                     "Largest group order for exhaustive subset sweeps")
      ->capture_default_str();

  auto* group = app.add_subcommand("group", "Describe a group");
  group->add_option("group", group_spec, "Group spec")->required();
  group->add_flag("--table", with_table, "Print the Cayley table");

  auto* subgroups = app.add_subcommand("subgroups", "List all subgroups");
  subgroups->add_option("group", group_spec, "Group spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return cmd_check(opt, group_spec, subset_spec, n);
    if (*coset) return cmd_coset(opt, group_spec, subgroup_spec, rep_spec, power, verify_up_to);
    if (*scan) return cmd_scan(opt, group_spec, max_n);
    if (*verify) return cmd_verify(opt, corpus, timing, exhaustive_max_order);
    if (*group) return cmd_group(opt, group_spec, with_table);
    if (*subgroups) return cmd_subgroups(opt, group_spec);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::TheoremViolation ? kExitViolation : kExitInput;
  }
  return kExitInput;
}
