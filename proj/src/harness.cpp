#include "nclosed/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "nclosed/error.hpp"
#include "nclosed/normality.hpp"
#include "nclosed/parser.hpp"
#include "nclosed/table_io.hpp"

namespace nclosed {

namespace {

constexpr const char* kMonotone = "SANITY.MONOTONE";
constexpr std::size_t kMaxCorpusN = 10;
constexpr std::size_t kSubsetChunk = 256;
constexpr int kRandomOraclePairs = 40;

struct CorpusGroup {
  std::string spec;
  FiniteGroup group;
  std::vector<Subgroup> subgroups;
};

struct Partial {
  std::map<std::string, TheoremTally> tallies;
  std::uint64_t oracle_checks = 0;
  std::vector<Certificate> oracle_mismatches;
};

std::vector<std::string> labels_of(const GSubset& s) { return s.labels(); }

std::vector<std::string> labels_of(const Magma& g, std::span<const Index> xs) {
  std::vector<std::string> out;
  for (Index x : xs) out.push_back(g.label(x));
  return out;
}

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t kind, std::uint64_t a,
                         std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

// Products of ordered tuples from `members` of length `len`: all of them
// when at most 256, else 64 uniform samples.
std::vector<std::vector<Index>> tuples(std::span<const Index> members, std::size_t len,
                                       std::mt19937_64& rng) {
  std::vector<std::vector<Index>> out;
  if (len == 0) return {{}};
  double count = std::pow(static_cast<double>(members.size()), static_cast<double>(len));
  if (count <= 256) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      std::vector<Index> t(len);
      for (std::size_t i = 0; i < len; ++i) t[i] = members[digits[i]];
      out.push_back(std::move(t));
      std::size_t i = 0;
      while (i < len && ++digits[i] == members.size()) digits[i++] = 0;
      if (i == len) return out;
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  for (int s = 0; s < 64; ++s) {
    std::vector<Index> t(len);
    for (auto& x : t) x = members[pick(rng)];
    out.push_back(std::move(t));
  }
  return out;
}

Index product_of(const Magma& g, std::span<const Index> xs) {
  Index p = g.is_group() ? g.identity() : xs.front();
  for (std::size_t i = g.is_group() ? 0 : 1; i < xs.size(); ++i) p = g.mul(p, xs[i]);
  return p;
}

class SubgroupChecker {
 public:
  SubgroupChecker(const CorpusGroup& cg, const Subgroup& h, std::mt19937_64& rng, Partial& out)
      : cg_(cg), g_(cg.group.magma()), h_(h), rng_(rng), out_(out) {}

  void run() {
    for (Index a = 0; a < g_.order(); ++a)
      if (!h_.contains(a)) check_rep(a);
    check_normality();
    check_monotone();
  }

 private:
  Certificate cert(const std::string& theorem, const GSubset* subset, std::optional<std::size_t> n,
                   std::optional<Index> rep, std::string detail) const {
    Certificate c;
    c.theorem = theorem;
    c.group = cg_.spec;
    if (subset) c.subset = labels_of(*subset);
    c.n = n;
    if (rep) c.rep = g_.label(*rep);
    c.subgroup = labels_of(h_.carrier());
    c.detail = std::move(detail);
    return c;
  }

  TheoremTally& tally(const std::string& id) { return out_.tallies[id]; }

  void fail(const std::string& id, Certificate c) { tally(id).violations.push_back(std::move(c)); }

  void check_rep(Index a) {
    const std::size_t order = g_.order();
    const std::size_t nmax = std::max<std::size_t>(20, order + 1);
    const GSubset coset = translate(a, h_.carrier(), Side::Left);
    const bool commutes = coset == translate(a, h_.carrier(), Side::Right);
    const auto closed = closedness_profile(coset, nmax);
    std::vector<Index> pw(std::max(2 * order, nmax) + 1);
    pw[0] = g_.identity();
    for (std::size_t m = 1; m < pw.size(); ++m) pw[m] = g_.mul(pw[m - 1], a);

    for (std::size_t n = 3; n <= kMaxCorpusN; ++n) {
      ++tally("C2.2").checked;
      const bool expected = commutes && h_.contains(pw[n - 1]);
      if (closed[n] != expected) {
        Certificate c = cert("C2.2", &coset, n, a,
                             "engine n-closedness disagrees with (aH = Ha and a^(n-1) in H)");
        c.engine_said = closed[n];
        c.expected = expected;
        if (auto w = non_closure_witness(coset, n)) c.witness = labels_of(g_, *w);
        fail("C2.2", std::move(c));
      }
    }
    std::optional<std::size_t> least;
    for (std::size_t m = 2; m <= nmax && !least; ++m)
      if (closed[m]) least = m;
    ++tally("C2.2").checked;
    if (least.has_value() != commutes) {
      Certificate c = cert("C2.2", &coset, least, a,
                           commutes ? "commuting coset is m-closed for no m <= " +
                                          std::to_string(nmax)
                                    : "non-commuting coset is m-closed");
      c.engine_said = least.has_value();
      c.expected = commutes;
      fail("C2.2", std::move(c));
    }

    for (std::size_t n = 2; n <= kMaxCorpusN; ++n) {
      ++tally("T2.2.1").checked;
      if (closed[n] && (n < 3 || !h_.contains(pw[n - 1]))) {
        Certificate c = cert("T2.2.1", &coset, n, a, "n-closed coset with a^(n-1) not in H or n < 3");
        c.engine_said = true;
        c.expected = false;
        fail("T2.2.1", std::move(c));
      }
    }

    if (least) check_closed_coset(a, coset, *least, closed, pw);
    check_power_exponents(a, pw);
  }

  void check_closed_coset(Index a, const GSubset& coset, std::size_t k,
                          const std::vector<bool>& closed, const std::vector<Index>& pw) {
    const GSubset& hs = h_.carrier();

    ++tally("T2.2.2").checked;
    for (Index b : coset.elements())
      if (translate(b, hs, Side::Left) != coset || translate(b, hs, Side::Right) != coset) {
        fail("T2.2.2", cert("T2.2.2", &coset, k, a, "bH = Hb = L fails for b = " + g_.label(b)));
        break;
      }

    ++tally("T2.2.3").checked;
    if (k < 3) fail("T2.2.3", cert("T2.2.3", &coset, k, a, "least closedness below 3"));
    const Index shift = pw[k - 2];
    if (translate(shift, coset, Side::Left) != hs || translate(shift, coset, Side::Right) != hs)
      fail("T2.2.3", cert("T2.2.3", &coset, k, a, "a^(k-2) L = L a^(k-2) = H fails"));
    const auto members = coset.elements();
    for (const auto& t : tuples(members, k - 2, rng_)) {
      const Index p = product_of(g_, t);
      if (translate(p, coset, Side::Left) != hs || translate(p, coset, Side::Right) != hs) {
        Certificate c = cert("T2.2.3", &coset, k, a, "d_1...d_(k-2) L = L d_1...d_(k-2) = H fails");
        c.witness = labels_of(g_, t);
        fail("T2.2.3", std::move(c));
        break;
      }
    }

    ++tally("T2.2.4").checked;
    for (std::size_t m = 1; m < pw.size(); ++m)
      if (h_.contains(pw[m]) != (m % (k - 1) == 0)) {
        fail("T2.2.4", cert("T2.2.4", &coset, k, a,
                            "a^" + std::to_string(m) + " membership disagrees with (k-1) | m"));
        break;
      }
    for (Index b : members) {
      std::size_t t = 1;
      for (Index y = b; !h_.contains(y); y = g_.mul(y, b)) ++t;
      if (t != k - 1) {
        fail("T2.2.4", cert("T2.2.4", &coset, k, b,
                            "least exponent " + std::to_string(t) + " differs from k-1 = " +
                                std::to_string(k - 1)));
        break;
      }
    }

    ++tally("T2.2.5").checked;
    for (std::size_t m = 2; m < closed.size(); ++m)
      if (closed[m] != ((m - 1) % (k - 1) == 0)) {
        Certificate c = cert("T2.2.5", &coset, m, a, "spectrum predicate disagrees with engine");
        c.engine_said = closed[m];
        c.expected = !closed[m];
        fail("T2.2.5", std::move(c));
        break;
      }
    try {
      const Element ea(g_, a);
      const CosetReport report = analyze_coset(ea, h_);
      if (report.least_closedness != std::optional<std::uint64_t>(k))
        fail("T2.2.5", cert("T2.2.5", &coset, k, a, "analyze_coset least closedness differs from engine scan"));
      for (const auto& v : report.violations) fail("T2.2.5", cert("T2.2.5", &coset, k, a, v));
      const SpectrumDescription s = closedness_spectrum(ea, h_, 20);
      if (s.step != k - 1)
        fail("T2.2.5", cert("T2.2.5", &coset, k, a, "spectrum step differs from k-1"));
    } catch (const Error& e) {
      fail("T2.2.5", cert("T2.2.5", &coset, k, a, e.what()));
    }

    for (std::uint64_t m = 1; m <= 2 * (k - 1); ++m) {
      ++tally("T2.3").checked;
      const std::uint64_t c = (k - 1) / std::gcd<std::uint64_t>(m, k - 1);
      const GSubset direct = translate(pw[m], h_.carrier(), Side::Left);
      const auto prof = closedness_profile(direct, std::max<std::size_t>(3 * c + 1, g_.order() + 1));
      std::size_t least_f = 0;
      for (std::size_t f = 2; f < prof.size() && least_f == 0; ++f)
        if (prof[f]) least_f = f;
      std::string problem;
      if (least_f != c + 1) problem = "least closedness of a^m H by scan is " + std::to_string(least_f);
      for (std::size_t f = 2; f <= 3 * c + 1 && problem.empty(); ++f)
        if (prof[f] != ((f - 1) % c == 0)) problem = "f-closedness disagrees at f = " + std::to_string(f);
      try {
        const PowerCoset pc = power_coset_closedness(Element(g_, a), h_, m);
        if (pc.coset != direct || pc.closedness != c + 1)
          problem = "power_coset_closedness returned a different coset or closedness";
      } catch (const Error& e) {
        problem = e.what();
      }
      if (!problem.empty()) {
        Certificate cc = cert("T2.3", &direct, c + 1, a, "m = " + std::to_string(m) + ": " + problem);
        fail("T2.3", std::move(cc));
      }
    }
  }

  void check_power_exponents(Index a, const std::vector<Index>& pw) {
    std::size_t t = 1;
    while (!h_.contains(pw[t])) ++t;
    for (std::uint64_t m = 1; m <= 2 * t; ++m) {
      ++tally("L2.1").checked;
      std::uint64_t direct = 1;
      for (Index y = pw[m]; !h_.contains(y); y = g_.mul(y, pw[m])) ++direct;
      std::string problem;
      if (t / std::gcd<std::uint64_t>(m, t) != direct)
        problem = "k/gcd(m,k) = " + std::to_string(t / std::gcd<std::uint64_t>(m, t)) +
                  ", direct search gives " + std::to_string(direct);
      try {
        if (least_power_exponent(Element(g_, a), h_, m) != direct)
          problem = "least_power_exponent differs from direct search";
      } catch (const Error& e) {
        problem = e.what();
      }
      if (!problem.empty())
        fail("L2.1", cert("L2.1", nullptr, std::nullopt, a, "m = " + std::to_string(m) + ": " + problem));
    }
  }

  // One certificate per coset that contradicts the classic verdict: a failing
  // coset of a normal subgroup, or a non-commuting coset that passed.
  void disagreement(const std::string& id, const NormalityVerdict& v,
                    std::optional<std::size_t> n, const std::string& detail) {
    for (const auto& pc : v.per_coset) {
      const bool wrong = v.verdict_classic ? !pc.passed : pc.passed && !coset_commutes(pc.rep, h_);
      if (!wrong) continue;
      const GSubset coset = translate(pc.rep, h_.carrier(), Side::Left);
      const auto m = n ? n : std::optional<std::size_t>(pc.closedness_checked);
      Certificate c = cert(id, &coset, m, pc.rep, detail);
      c.engine_said = pc.passed;
      c.expected = v.verdict_classic;
      fail(id, std::move(c));
    }
  }

  void check_normality() {
    const std::size_t idx = index(h_);
    ++tally("T3.2").checked;
    try {
      const NormalityVerdict v = normal_iff_index_plus_one(h_);
      if (!v.agreement)
        disagreement("T3.2", v, idx + 1,
                     std::string("classic normality ") + (v.verdict_classic ? "true" : "false") +
                         " but every coset (index+1)-closed is " +
                         (v.verdict_via_closedness ? "true" : "false"));
      for (const auto& msg : v.violations) fail("T3.2", cert("T3.2", nullptr, idx + 1, std::nullopt, msg));
      if (v.verdict_classic)
        for (Index a = 0; a < g_.order(); ++a)
          if (!h_.contains(a) && !h_.contains(cg_.group.power(a, idx)))
            fail("T3.2", cert("T3.2", nullptr, idx + 1, a, "normal subgroup but a^index not in H"));
    } catch (const Error& e) {
      fail("T3.2", cert("T3.2", nullptr, idx + 1, std::nullopt, e.what()));
    }

    ++tally("T3.1").checked;
    try {
      const NormalityVerdict v = normal_iff_existential(h_);
      if (!v.agreement)
        disagreement("T3.1", v, std::nullopt,
                     "existential closedness verdict disagrees with classic normality");
      for (const auto& msg : v.violations) fail("T3.1", cert("T3.1", nullptr, std::nullopt, std::nullopt, msg));
      for (const auto& pc : v.per_coset) {
        if (!pc.closedness_checked) continue;
        std::uint64_t t = 1;
        for (Index y = pc.rep; !h_.contains(y); y = g_.mul(y, pc.rep)) ++t;
        if ((*pc.closedness_checked - 1) % t != 0)
          fail("T3.1", cert("T3.1", nullptr, pc.closedness_checked, pc.rep,
                            "witness m with (m-1) not divisible by t = " + std::to_string(t)));
      }
    } catch (const Error& e) {
      fail("T3.1", cert("T3.1", nullptr, std::nullopt, std::nullopt, e.what()));
    }
  }

  void check_monotone() {
    for (std::size_t n = 2; n <= kMaxCorpusN; ++n) {
      ++tally(kMonotone).checked;
      if (!is_n_closed(h_.carrier(), n)) {
        Certificate c = cert(kMonotone, &h_.carrier(), n, std::nullopt, "subgroup reported not n-closed");
        c.engine_said = false;
        c.expected = true;
        fail(kMonotone, std::move(c));
      }
    }
  }

  const CorpusGroup& cg_;
  const Magma& g_;
  const Subgroup& h_;
  std::mt19937_64& rng_;
  Partial& out_;
};

void oracle_check(const std::string& spec, const GSubset& d, std::size_t n, bool engine,
                  Partial& out) {
  ++out.oracle_checks;
  const bool oracle = is_n_closed_oracle(d, n);
  if (oracle != engine) {
    Certificate c;
    c.theorem = "ENGINE";
    c.group = spec;
    c.subset = d.labels();
    c.n = n;
    c.engine_said = engine;
    c.expected = oracle;
    c.detail = "product-set engine disagrees with tuple enumeration";
    out.oracle_mismatches.push_back(std::move(c));
  }
}

void check_subsets(const CorpusGroup& cg, std::uint64_t first, std::uint64_t last,
                   std::uint64_t seed, Partial& out) {
  const FiniteGroup& g = cg.group;
  const Magma& m = g.magma();
  for (std::uint64_t mask = first; mask < last; ++mask) {
    const GSubset d = GSubset::from_mask(g, mask);
    const auto closed = closedness_profile(d, 5);
    for (std::size_t n = 2; n <= 4; ++n) oracle_check(cg.spec, d, n, closed[n], out);
    if (closed[2]) continue;
    for (std::size_t n = 3; n <= 5; ++n) {
      if (!closed[n]) continue;
      auto& t21 = out.tallies["T2.1"];
      ++t21.checked;
      auto make = [&](const std::string& id, const std::string& detail) {
        Certificate c;
        c.theorem = id;
        c.group = cg.spec;
        c.subset = d.labels();
        c.n = n;
        c.detail = detail;
        return c;
      };
      try {
        const SubgroupExtraction ex = extract_subgroup(d, n, seed ^ mask);
        for (const auto& v : ex.violations) t21.violations.push_back(make("T2.1", v));
        if (translate(ex.coset_rep, ex.extracted.carrier(), Side::Left) != d)
          t21.violations.push_back(make("T2.1", "D != b H"));
        auto& c201 = out.tallies["C2.01"];
        for (Index x : d.elements()) {
          ++c201.checked;
          const GSubset hx = translate(g.power(x, n - 2), d, Side::Left);
          if (!is_subgroup(hx) || hx != ex.extracted.carrier() ||
              translate(x, hx, Side::Left) != d) {
            Certificate c = make("C2.01", "d^(n-2) D is not the common subgroup of which D is a left coset");
            c.rep = m.label(x);
            c.subgroup = hx.labels();
            c201.violations.push_back(std::move(c));
          }
        }
      } catch (const Error& e) {
        t21.violations.push_back(make("T2.1", e.what()));
      }
    }
  }
}

void random_oracle_pairs(const CorpusGroup& cg, std::mt19937_64& rng, Partial& out) {
  const std::size_t order = cg.group.order();
  std::uniform_int_distribution<std::size_t> pick_n(2, 5);
  std::uniform_int_distribution<Index> pick_x(0, static_cast<Index>(order - 1));
  for (int i = 0; i < kRandomOraclePairs; ++i) {
    const std::size_t n = pick_n(rng);
    std::size_t cap = 1;
    while (std::pow(static_cast<double>(cap + 1), static_cast<double>(n)) <= kDefaultTupleBudget)
      ++cap;
    cap = std::min(cap, order);
    std::uniform_int_distribution<std::size_t> pick_size(1, cap);
    const std::size_t size = pick_size(rng);
    GSubset d(cg.group);
    while (d.size() < size) d.insert(pick_x(rng));
    oracle_check(cg.spec, d, n, is_n_closed(d, n), out);
  }
}

void check_semigroup(std::uint64_t modulus, std::uint64_t seed, Partial& out) {
  const FiniteSemigroup s = make_multiplicative_semigroup(modulus);
  const std::string name = "mul(Z" + std::to_string(modulus) + ")";
  std::mt19937_64 rng = task_rng(seed, 4, modulus, 0);
  auto& tally = out.tallies["C2.1"];
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s.order()); ++mask) {
    const GSubset d = GSubset::from_mask(s, mask);
    const auto closed = closedness_profile(d, 4);
    const auto members = d.elements();
    for (std::size_t n = 3; n <= 4; ++n) {
      if (!closed[n]) continue;
      for (const auto& prefix : tuples(members, n - 2, rng)) {
        ++tally.checked;
        const Index p = product_of(s.magma(), prefix);
        const GSubset shifted = translate(p, d, Side::Left);
        std::string problem;
        if (!product_set(shifted, shifted).is_subset_of(shifted))
          problem = "shift set is not 2-closed";
        try {
          const ShiftResult r = semigroup_shift_2closed(d, n, prefix);
          if (r.shifted != shifted || !r.two_closed) problem = "semigroup_shift_2closed reports failure";
        } catch (const Error& e) {
          problem = e.what();
        }
        if (!problem.empty()) {
          Certificate c;
          c.theorem = "C2.1";
          c.group = name;
          c.subset = d.labels();
          c.n = n;
          c.witness = labels_of(s.magma(), prefix);
          c.detail = problem;
          c.table = table_to_json(s);
          tally.violations.push_back(std::move(c));
        }
      }
    }
  }
}

void merge(Partial& into, Partial&& from) {
  for (auto& [id, t] : from.tallies) {
    auto& dst = into.tallies[id];
    dst.checked += t.checked;
    for (auto& c : t.violations) dst.violations.push_back(std::move(c));
  }
  into.oracle_checks += from.oracle_checks;
  for (auto& c : from.oracle_mismatches) into.oracle_mismatches.push_back(std::move(c));
}

nlohmann::json optional_json(const auto& v) {
  if (v) return nlohmann::json(*v);
  return nullptr;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "T2.1", "C2.01", "C2.1", "T2.2.1", "T2.2.2", "T2.2.3", "T2.2.4",
      "T2.2.5", "C2.2", "L2.1", "T2.3", "T3.1", "T3.2", kMonotone};
  return ids;
}

std::size_t VerificationReport::violation_count() const {
  std::size_t n = engine_oracle_mismatches.size();
  for (const auto& [id, t] : per_theorem) n += t.violations.size();
  return n;
}

std::vector<std::string> default_corpus() {
  std::vector<std::string> out;
  for (int n = 2; n <= 16; ++n) out.push_back("Z" + std::to_string(n));
  for (const char* s : {"Z2xZ2", "Z2xZ4", "S3", "S4", "D3", "D4", "D5", "D6", "Q8",
                        "perm(4): (1 2 3), (2 3 4)"})
    out.emplace_back(s);
  return out;
}

VerificationReport run_verification(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CorpusGroup> corpus;
  for (const auto& spec : options.corpus) {
    FiniteGroup g = parse_group_spec(spec);
    if (g.order() > options.max_group_order)
      throw Error(ErrorKind::TooLarge, "corpus group '" + spec + "' has order " +
                                           std::to_string(g.order()) + " above the cap of " +
                                           std::to_string(options.max_group_order));
    corpus.push_back({spec, std::move(g), {}});
  }
  parallel_for(corpus.size(), options.jobs,
               [&](std::size_t i) { corpus[i].subgroups = enumerate_subgroups(corpus[i].group); });

  std::vector<std::function<void(Partial&)>> tasks;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const CorpusGroup& cg = corpus[gi];
    for (std::size_t si = 0; si < cg.subgroups.size(); ++si) {
      if (cg.subgroups[si].is_whole_group()) continue;
      tasks.push_back([&, gi, si](Partial& out) {
        std::mt19937_64 rng = task_rng(options.seed, 1, gi, si);
        SubgroupChecker(cg, cg.subgroups[si], rng, out).run();
      });
    }
    const std::size_t order = cg.group.order();
    if (order <= options.exhaustive_max_order) {
      const std::uint64_t total = std::uint64_t{1} << order;
      for (std::uint64_t first = 1; first < total; first += kSubsetChunk) {
        const std::uint64_t last = std::min(total, first + kSubsetChunk);
        tasks.push_back([&, first, last](Partial& out) {
          check_subsets(cg, first, last, options.seed, out);
        });
      }
    } else {
      tasks.push_back([&, gi](Partial& out) {
        std::mt19937_64 rng = task_rng(options.seed, 3, gi, 0);
        random_oracle_pairs(cg, rng, out);
      });
    }
  }
  for (std::uint64_t modulus : options.semigroup_moduli)
    tasks.push_back([&, modulus](Partial& out) { check_semigroup(modulus, options.seed, out); });

  std::vector<Partial> partials(tasks.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t i) { tasks[i](partials[i]); });

  Partial all;
  for (const auto& id : theorem_ids()) all.tallies[id];
  for (auto& p : partials) merge(all, std::move(p));

  VerificationReport report;
  report.corpus = options.corpus;
  for (std::uint64_t m : options.semigroup_moduli)
    report.semigroup_corpus.push_back("mul(Z" + std::to_string(m) + ")");
  for (const auto& cg : corpus) {
    std::size_t normal = 0;
    for (const auto& h : cg.subgroups) normal += is_normal_classic(h) ? 1 : 0;
    report.groups.push_back({cg.spec, cg.group.order(), cg.subgroups.size(), normal});
  }
  report.per_theorem = std::move(all.tallies);
  report.engine_oracle_checks = all.oracle_checks;
  report.engine_oracle_mismatches = std::move(all.oracle_mismatches);
  report.seed = options.seed;
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j = {{"theorem", c.theorem},
                      {"group", c.group},
                      {"subset", c.subset},
                      {"n", optional_json(c.n)},
                      {"rep", optional_json(c.rep)},
                      {"subgroup", c.subgroup},
                      {"witness", c.witness},
                      {"engineSaid", optional_json(c.engine_said)},
                      {"expected", optional_json(c.expected)},
                      {"detail", c.detail}};
  if (c.table) j["table"] = *c.table;
  return j;
}

nlohmann::json to_json(const VerificationReport& report, bool include_timing) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [id, t] : report.per_theorem) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& c : t.violations) v.push_back(to_json(c));
    per[id] = {{"checked", t.checked}, {"violations", v}};
  }
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : report.groups)
    groups.push_back({{"spec", g.spec},
                      {"order", g.order},
                      {"subgroups", g.subgroups},
                      {"normalSubgroups", g.normal_subgroups}});
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& c : report.engine_oracle_mismatches) mismatches.push_back(to_json(c));
  nlohmann::json j = {{"schemaVersion", 1},
                      {"corpus", report.corpus},
                      {"semigroupCorpus", report.semigroup_corpus},
                      {"seed", report.seed},
                      {"groups", groups},
                      {"perTheorem", per},
                      {"engineOracle", {{"checked", report.engine_oracle_checks},
                                        {"mismatches", mismatches}}},
                      {"totalViolations", report.violation_count()},
                      {"status", report.clean() ? "clean" : "violations"}};
  if (include_timing) j["elapsedMs"] = report.elapsed.count();
  return j;
}

std::string to_text(const VerificationReport& report) {
  std::ostringstream out;
  out << "corpus: " << report.corpus.size() << " groups, " << report.semigroup_corpus.size()
      << " semigroups, seed " << report.seed << "\n";
  for (const auto& g : report.groups)
    out << "  " << g.spec << "  order " << g.order << ", " << g.subgroups << " subgroups ("
        << g.normal_subgroups << " normal)\n";
  out << "\n";
  // The text form lists a few certificates per result; --format json has all of them.
  constexpr std::size_t kShown = 3;
  auto list = [&](const std::vector<Certificate>& certs) {
    for (std::size_t i = 0; i < certs.size() && i < kShown; ++i)
      out << "    ! " << to_json(certs[i]).dump() << "\n";
    if (certs.size() > kShown) out << "    ... and " << certs.size() - kShown << " more\n";
  };
  for (const auto& id : theorem_ids()) {
    const auto it = report.per_theorem.find(id);
    if (it == report.per_theorem.end()) continue;
    const auto& t = it->second;
    out << "  " << id << std::string(id.size() < 16 ? 16 - id.size() : 1, ' ') << "checked "
        << t.checked << ", violations " << t.violations.size() << "\n";
    list(t.violations);
  }
  out << "  engine/oracle   checked " << report.engine_oracle_checks << ", mismatches "
      << report.engine_oracle_mismatches.size() << "\n";
  list(report.engine_oracle_mismatches);
  out << "\n"
      << (report.clean() ? "OK" : "FAILED") << ": " << report.violation_count()
      << " violations in " << report.elapsed.count() << " ms\n";
  return out.str();
}

ScanReport scan_subsets(const FiniteGroup& g, const std::string& spec, std::size_t n_max,
                        std::size_t jobs, std::uint64_t seed) {
  if (g.order() > kMaxScanOrder)
    throw Error(ErrorKind::GroupTooLargeForScan,
                "order " + std::to_string(g.order()) + " exceeds " + std::to_string(kMaxScanOrder));
  if (n_max < 3) throw Error(ErrorKind::InvalidArgument, "max-n must be at least 3");
  const std::uint64_t total = (std::uint64_t{1} << g.order()) - 1;
  std::vector<std::optional<ScanEntry>> entries(total);
  const std::size_t chunks = (total + kSubsetChunk - 1) / kSubsetChunk;
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::uint64_t first = 1 + c * kSubsetChunk;
    const std::uint64_t last = std::min<std::uint64_t>(total + 1, first + kSubsetChunk);
    for (std::uint64_t mask = first; mask < last; ++mask) {
      ScanEntry e{GSubset::from_mask(g, mask), std::nullopt, std::nullopt, true, {}};
      e.least_closedness = least_closed_scan(e.subset, n_max);
      if (e.least_closedness && *e.least_closedness >= 3) {
        try {
          e.extraction = extract_subgroup(e.subset, *e.least_closedness, seed ^ mask);
          e.violations = e.extraction->violations;
          const Index b = e.extraction->coset_rep;
          const Subgroup& h = e.extraction->extracted;
          e.criterion_holds = coset_commutes(b, h) &&
                               h.contains(g.power(b, *e.least_closedness - 1)) &&
                               !h.contains(g.power(b, *e.least_closedness - 2));
        } catch (const Error& err) {
          e.violations.push_back(err.what());
          e.criterion_holds = false;
        }
      }
      entries[mask - 1] = std::move(e);
    }
  });
  ScanReport report{spec, g.order(), n_max, {}};
  for (auto& e : entries) {
    if (!e->least_closedness)
      ++report.never_up_to_bound;
    else if (*e->least_closedness == 2)
      ++report.subgroups;
    else if (e->extraction)
      ++report.cosets;
    else
      ++report.other_closed;
    report.entries.push_back(std::move(*e));
  }
  return report;
}

nlohmann::json to_json(const ScanReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json j = {{"subset", e.subset.labels()},
                        {"leastClosedness", optional_json(e.least_closedness)}};
    if (e.extraction) {
      j["coset"] = {{"subgroup", e.extraction->extracted.carrier().labels()},
                    {"rep", e.subset.owner().label(e.extraction->coset_rep)},
                    {"criterionHolds", e.criterion_holds}};
    } else {
      j["coset"] = nullptr;
    }
    if (!e.violations.empty()) j["violations"] = e.violations;
    entries.push_back(std::move(j));
  }
  return {{"group", report.group},
          {"order", report.order},
          {"nRange", {3, report.n_max}},
          {"classified", entries},
          {"totals",
           {{"subsets", report.entries.size()},
            {"subgroups", report.subgroups},
            {"nClosedCosets", report.cosets},
            {"otherClosed", report.other_closed},
            {"noneUpToBound", report.never_up_to_bound}}}};
}

namespace {

std::string set_text(const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + labels[i];
  return out + "}";
}

}  // namespace

std::string to_text(const ScanReport& report) {
  std::ostringstream out;
  out << "group " << report.group << " (order " << report.order << "), n in [3, " << report.n_max
      << "]\n";
  for (const auto& e : report.entries) {
    if (!e.extraction && e.violations.empty()) continue;
    out << "  " << set_text(e.subset.labels()) << "  least closedness " << *e.least_closedness;
    if (e.extraction)
      out << ", coset " << e.subset.owner().label(e.extraction->coset_rep) << " * "
          << set_text(e.extraction->extracted.carrier().labels())
          << (e.criterion_holds ? "" : "  [commuting-coset criterion FAILED]");
    for (const auto& v : e.violations) out << "\n    ! " << v;
    out << "\n";
  }
  out << "subsets " << report.entries.size() << ": " << report.subgroups << " subgroups, "
      << report.cosets << " n-closed cosets, " << report.never_up_to_bound
      << " not n-closed for any n <= " << report.n_max << "\n";
  return out.str();
}

}  // namespace nclosed
