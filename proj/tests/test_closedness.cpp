#include <doctest.h>

#include <random>
#include <set>

#include "nclosed/closedness.hpp"
#include "nclosed/error.hpp"
#include "nclosed/parser.hpp"
#include "oracles.hpp"

using namespace nclosed;

namespace {

GSubset subset(const FiniteSemigroup& g, std::string_view spec) { return parse_subset_spec(spec, g); }

Subgroup sub(const FiniteGroup& g, std::string_view spec) {
  auto h = Subgroup::certify(subset(g, spec));
  REQUIRE(h.has_value());
  return *h;
}

std::set<std::uint32_t> as_set(const GSubset& s) {
  auto e = s.elements();
  return {e.begin(), e.end()};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an nclosed::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("is_n_closed examples") {
  const auto z4 = make_named(Family::Cyclic, 4);
  CHECK(is_n_closed(subset(z4, "1,3"), 3));
  CHECK_FALSE(is_n_closed(subset(z4, "1,3"), 2));

  const auto s3 = make_named(Family::Symmetric, 3);
  const auto l = subset(s3, "(1 3),(1 2 3)");
  CHECK_FALSE(is_n_closed(l, 3));
  const auto w = non_closure_witness(l, 3);
  REQUIRE(w.has_value());
  CHECK(w->size() == 3);
  Index p = (*w)[0];
  for (std::size_t i = 1; i < w->size(); ++i) p = s3.mul(p, (*w)[i]);
  CHECK_FALSE(l.contains(p));
  for (Index x : *w) CHECK(l.contains(x));
  CHECK_FALSE(non_closure_witness(subset(z4, "1,3"), 3).has_value());

  CHECK(kind_of([&] { is_n_closed(GSubset(z4), 3); }) == ErrorKind::EmptySubset);
  CHECK(kind_of([&] { is_n_closed(subset(z4, "1"), 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("oracle examples") {
  const auto z9 = make_named(Family::Cyclic, 9);
  CHECK(is_n_closed_oracle(subset(z9, "1,4,7"), 4));
  CHECK_FALSE(is_n_closed_oracle(subset(z9, "1,4,7"), 3));
  const auto s4 = make_named(Family::Symmetric, 4);
  for (Index a = 1; a < s4.order(); ++a) {
    const auto k = s4.element_order(a);
    CHECK(is_n_closed_oracle(GSubset(s4, {a}), k + 1));
    CHECK_FALSE(is_n_closed_oracle(GSubset(s4, {a}), k));
  }
  CHECK(kind_of([&] { is_n_closed_oracle(GSubset::full(z9), 8); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("least_closed_scan examples") {
  const auto z4 = make_named(Family::Cyclic, 4);
  CHECK(least_closed_scan(subset(z4, "1,3"), 10) == 3);
  const auto s3 = make_named(Family::Symmetric, 3);
  CHECK_FALSE(least_closed_scan(subset(s3, "(1 3),(1 2 3)"), 12).has_value());
  CHECK_FALSE(least_closed_scan(subset(s3, "(1 3),(1 2 3)")).has_value());
  for (const auto& h : enumerate_subgroups(s3)) CHECK(least_closed_scan(h.carrier(), 2) == 2);
}

TEST_CASE("engine agrees with the tuple oracle") {
  // Exhaustive over every nonempty subset of small groups and semigroups.
  std::vector<FiniteSemigroup> owners = {make_named(Family::Cyclic, 6), make_named(Family::Symmetric, 3),
                                         parse_group_spec("Z2xZ2"), make_named(Family::Cyclic, 7),
                                         make_multiplicative_semigroup(6), make_multiplicative_semigroup(8)};
  for (const auto& g : owners) {
    const auto rows = oracle::rows_of(g);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.order()); ++mask) {
      const auto d = GSubset::from_mask(g, mask);
      const auto ds = as_set(d);
      const auto profile = closedness_profile(d, 5);
      for (std::size_t n = 2; n <= 5; ++n) {
        const bool expected = oracle::n_closed(rows, ds, n);
        CHECK(is_n_closed(d, n) == expected);
        CHECK(profile[n] == expected);
        if (ds.size() <= 4) CHECK(is_n_closed_oracle(d, n) == expected);
        CHECK(non_closure_witness(d, n).has_value() == !expected);
      }
    }
  }
}

TEST_CASE("random larger subsets agree with the oracle") {
  std::mt19937_64 rng(5);
  for (const auto& g : {make_named(Family::Symmetric, 4), make_named(Family::Dihedral, 6),
                        make_named(Family::Quaternion, 8)}) {
    const auto rows = oracle::rows_of(g);
    for (int trial = 0; trial < 60; ++trial) {
      GSubset d(g);
      const auto size = 1 + rng() % 4;
      while (d.size() < size) d.insert(static_cast<Index>(rng() % g.order()));
      for (std::size_t n = 2; n <= 5; ++n)
        CHECK(is_n_closed(d, n) == oracle::n_closed(rows, as_set(d), n));
    }
    // cosets are the interesting case; random sets are rarely closed
    for (const auto& h : enumerate_subgroups(g)) {
      if (h.order() > 4 || h.is_whole_group()) continue;
      for (Index a = 0; a < g.order(); ++a) {
        const auto l = translate(a, h.carrier(), Side::Left);
        for (std::size_t n = 2; n <= 5; ++n)
          CHECK(is_n_closed(l, n) == oracle::n_closed(rows, as_set(l), n));
      }
    }
  }
}

TEST_CASE("analyze_coset examples") {
  const auto z9 = make_named(Family::Cyclic, 9);
  const auto r = analyze_coset(z9.element(1), sub(z9, "0,3,6"));
  CHECK(r.commutes);
  CHECK(r.least_exponent == 3);
  CHECK(r.least_closedness == 4);
  CHECK(r.spectrum_step == 3);
  CHECK(r.coset == subset(z9, "1,4,7"));
  CHECK(r.violations.empty());

  const auto s3 = make_named(Family::Symmetric, 3);
  const Element a = *s3.find("(1 3)");
  const auto h = sub(s3, "e,(1 2)");
  const auto q = analyze_coset(a, h);
  CHECK_FALSE(q.commutes);
  CHECK_FALSE(q.least_closedness.has_value());
  CHECK(h.contains(s3.power(a.index(), 6)));
  CHECK(q.coset.contains(s3.power(a.index(), 7)));

  const auto z4 = make_named(Family::Cyclic, 4);
  const auto t = analyze_coset(z4.element(1), sub(z4, "0,2"));
  CHECK(t.commutes);
  CHECK(t.least_exponent == 2);
  CHECK(t.least_closedness == 3);

  CHECK(kind_of([&] { analyze_coset(z4.element(2), sub(z4, "0,2")); }) == ErrorKind::RepInSubgroup);
}

TEST_CASE("commuting-coset criterion matches the engine") {
  std::vector<FiniteGroup> groups = {make_named(Family::Symmetric, 4), make_named(Family::Dihedral, 5),
                                     make_named(Family::Quaternion, 8), make_named(Family::Cyclic, 12),
                                     parse_group_spec("Z2xZ4"), parse_group_spec("S3xZ2")};
  for (const auto& g : groups) {
    for (const auto& h : enumerate_subgroups(g)) {
      if (h.is_whole_group()) continue;
      for (Index a = 0; a < g.order(); ++a) {
        if (h.contains(a)) continue;
        const auto r = analyze_coset(g.element(a), h);
        CHECK(r.violations.empty());
        // brute force: left and right cosets as sets
        std::set<Index> left, right;
        for (Index x : h.carrier().elements()) {
          left.insert(g.mul(a, x));
          right.insert(g.mul(x, a));
        }
        CHECK(r.commutes == (left == right));
        Index t = 1;
        for (Index p = a; !h.contains(p); p = g.mul(p, a)) ++t;
        CHECK(r.least_exponent == t);
        const auto profile = closedness_profile(r.coset, 12);
        CHECK_FALSE(profile[2]);
        for (std::size_t n = 3; n <= 12; ++n) {
          const bool fast = r.commutes && h.contains(g.power(a, n - 1));
          CHECK(profile[n] == fast);
        }
        if (r.commutes && t + 1 <= 12) {
          CHECK(least_closed_scan(r.coset, 12) == t + 1);
        } else {
          CHECK_FALSE(least_closed_scan(r.coset, 12).has_value());
        }
      }
    }
  }
}

TEST_CASE("closedness_spectrum") {
  const auto z9 = make_named(Family::Cyclic, 9);
  const auto s = closedness_spectrum(z9.element(1), sub(z9, "0,3,6"), 20);
  CHECK(s.step == 3);
  CHECK(s.offset == 1);
  CHECK(s.verified_up_to == 20);
  std::vector<std::uint64_t> members;
  for (std::uint64_t m = 2; m <= 20; ++m)
    if (s.contains(m)) members.push_back(m);
  CHECK(members == std::vector<std::uint64_t>{4, 7, 10, 13, 16, 19});

  const auto z4 = make_named(Family::Cyclic, 4);
  const auto t = closedness_spectrum(z4.element(1), sub(z4, "0,2"), 15);
  CHECK(t.step == 2);
  for (std::uint64_t m = 2; m <= 15; ++m) CHECK(t.contains(m) == (m % 2 == 1));

  const auto s3 = make_named(Family::Symmetric, 3);
  CHECK(closedness_spectrum(*s3.find("(1 2)"), sub(s3, "e,(1 2 3),(1 3 2)"), 10).step == 2);
  CHECK(kind_of([&] { closedness_spectrum(*s3.find("(1 3)"), sub(s3, "e,(1 2)"), 10); }) ==
        ErrorKind::NonCommutingCoset);
}

TEST_CASE("singleton spectrum") {
  for (const auto& g : {make_named(Family::Cyclic, 7), make_named(Family::Symmetric, 4),
                        make_named(Family::Quaternion, 8)}) {
    for (Index a = 1; a < g.order(); ++a) {
      const auto k = g.element_order(a);
      const auto profile = closedness_profile(GSubset(g, {a}), 3 * k + 1);
      for (std::size_t m = 2; m <= 3 * k + 1; ++m) CHECK(profile[m] == ((m - 1) % k == 0));
    }
  }
}

TEST_CASE("least_power_exponent") {
  const auto z12 = make_named(Family::Cyclic, 12);
  const auto h = sub(z12, "0,6");
  CHECK(least_power_exponent(z12.element(1), h, 4) == 3);
  CHECK(least_power_exponent(z12.element(1), h, 6) == 1);
  CHECK(least_power_exponent(z12.element(1), h, 5) == 6);
  CHECK(kind_of([&] { least_power_exponent(z12.element(6), h, 2); }) == ErrorKind::RepInSubgroup);

  // direct search in non-abelian groups
  const auto s4 = make_named(Family::Symmetric, 4);
  for (const auto& k : enumerate_subgroups(s4)) {
    if (k.is_whole_group()) continue;
    for (Index a = 0; a < s4.order(); ++a) {
      if (k.contains(a)) continue;
      for (std::uint64_t m = 1; m <= 8; ++m) {
        const Index am = s4.power(a, m);
        std::uint64_t c = 1;
        for (Index p = am; !k.contains(p); p = s4.mul(p, am)) ++c;
        CHECK(least_power_exponent(s4.element(a), k, m) == c);
      }
    }
  }
}

TEST_CASE("power_coset_closedness") {
  const auto z9 = make_named(Family::Cyclic, 9);
  const auto h = sub(z9, "0,3,6");
  const auto p2 = power_coset_closedness(z9.element(1), h, 2);
  CHECK(p2.coset == subset(z9, "2,5,8"));
  CHECK(p2.closedness == 4);
  const auto p3 = power_coset_closedness(z9.element(1), h, 3);
  CHECK(p3.coset == h.carrier());
  CHECK(p3.closedness == 2);

  const auto z12 = make_named(Family::Cyclic, 12);
  const auto p = power_coset_closedness(z12.element(1), sub(z12, "0,6"), 2);
  CHECK(p.coset == subset(z12, "2,8"));
  CHECK(p.closedness == 4);
  CHECK(is_n_closed(p.coset, 4));
  CHECK_FALSE(is_n_closed(p.coset, 3));
  CHECK_FALSE(is_n_closed(p.coset, 2));

  const auto s3 = make_named(Family::Symmetric, 3);
  CHECK(kind_of([&] { power_coset_closedness(*s3.find("(1 3)"), sub(s3, "e,(1 2)"), 2); }) ==
        ErrorKind::NonCommutingCoset);

  // least closedness of a^m H against an engine scan
  const auto d5 = make_named(Family::Dihedral, 5);
  const auto rot = sub(d5, "e,r,r^2,r^3,r^4");
  for (std::uint64_t m = 1; m <= 6; ++m) {
    const auto pc = power_coset_closedness(*d5.find("s"), rot, m);
    CHECK(least_closed_scan(pc.coset, 20) == pc.closedness);
  }
  for (std::uint64_t m = 1; m <= 12; ++m) {
    const auto pc = power_coset_closedness(z12.element(1), sub(z12, "0"), m);
    CHECK(least_closed_scan(pc.coset, 30) == pc.closedness);
  }
}

TEST_CASE("extract_subgroup examples") {
  const auto z4 = make_named(Family::Cyclic, 4);
  const auto e = extract_subgroup(subset(z4, "1,3"), 3);
  CHECK(e.extracted.carrier() == subset(z4, "0,2"));
  CHECK(translate(e.coset_rep, e.extracted.carrier(), Side::Left) == subset(z4, "1,3"));
  CHECK(e.violations.empty());

  const auto z9 = make_named(Family::Cyclic, 9);
  const auto f = extract_subgroup(subset(z9, "1,4,7"), 4);
  CHECK(f.extracted.carrier() == subset(z9, "0,3,6"));
  CHECK(translate(f.coset_rep, f.extracted.carrier(), Side::Left) == subset(z9, "1,4,7"));
  CHECK(f.witness == 1);

  const auto s3 = make_named(Family::Symmetric, 3);
  const auto g = extract_subgroup(subset(s3, "(1 2)"), 3);
  CHECK(g.extracted.order() == 1);
  CHECK(g.coset_rep == s3.find("(1 2)")->index());

  CHECK(kind_of([&] { extract_subgroup(subset(z4, "1,3"), 4); }) == ErrorKind::NotNClosed);
  CHECK(kind_of([&] { extract_subgroup(subset(z4, "0,2"), 3); }) == ErrorKind::AlreadyClosed);
  CHECK(kind_of([&] { extract_subgroup(GSubset(z4), 3); }) == ErrorKind::EmptySubset);
}

TEST_CASE("extraction invariant over every n-closed subset") {
  for (const auto& g : {make_named(Family::Cyclic, 8), make_named(Family::Symmetric, 3),
                        parse_group_spec("Z2xZ4")}) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.order()); ++mask) {
      const auto d = GSubset::from_mask(g, mask);
      const auto profile = closedness_profile(d, 6);
      if (profile[2]) continue;
      for (std::size_t n = 3; n <= 6; ++n) {
        if (!profile[n]) continue;
        const auto x = extract_subgroup(d, n, 17);
        CHECK(x.violations.empty());
        CHECK(is_subgroup(x.extracted.carrier()));
        CHECK(translate(x.coset_rep, x.extracted.carrier(), Side::Left) == d);
        // every d in D gives the same d^(n-2) * D
        for (Index y : d.elements()) {
          GSubset shifted = d;
          for (std::size_t i = 0; i + 2 < n; ++i) shifted = translate(y, shifted, Side::Left);
          CHECK(shifted == x.extracted.carrier());
        }
      }
    }
  }
}

TEST_CASE("semigroup shift sets") {
  const auto z6 = make_multiplicative_semigroup(6);
  const auto d = GSubset(z6, {3, 5});
  CHECK(is_n_closed(d, 3));
  CHECK_FALSE(is_n_closed(d, 2));
  const std::vector<Index> p3{3}, p5{5};
  const auto a = semigroup_shift_2closed(d, 3, p3);
  CHECK(a.shifted == GSubset(z6, {3}));
  CHECK(a.two_closed);
  const auto b = semigroup_shift_2closed(d, 3, p5);
  CHECK(b.shifted == GSubset(z6, {1, 3}));
  CHECK(b.two_closed);
  CHECK_FALSE(b.witness.has_value());

  const auto z4 = make_named(Family::Cyclic, 4);
  const std::vector<Index> one{1};
  const auto c = semigroup_shift_2closed(subset(z4, "1,3"), 3, one);
  CHECK(c.shifted == subset(z4, "0,2"));
  CHECK(c.two_closed);

  const std::vector<Index> bad{2}, two{3, 5}, fives{5, 5};
  CHECK(kind_of([&] { semigroup_shift_2closed(d, 3, bad); }) == ErrorKind::PrefixNotInD);
  CHECK(kind_of([&] { semigroup_shift_2closed(d, 3, two); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { semigroup_shift_2closed(GSubset(z6, {5}), 4, fives); }) == ErrorKind::NotNClosed);
  CHECK(kind_of([&] { Subgroup::certify(GSubset(z6, {1})); }) == ErrorKind::NotAGroup);
}

TEST_CASE("shift sets are 2-closed across semigroups") {
  for (std::uint64_t modulus = 2; modulus <= 9; ++modulus) {
    const auto s = make_multiplicative_semigroup(modulus);
    const auto rows = oracle::rows_of(s);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s.order()); ++mask) {
      const auto d = GSubset::from_mask(s, mask);
      for (std::size_t n = 3; n <= 4; ++n) {
        if (!oracle::n_closed(rows, as_set(d), n)) continue;
        const auto xs = d.elements();
        for (Index x : xs)
          for (Index y : xs) {
            std::vector<Index> prefix{x};
            if (n == 4) prefix.push_back(y);
            const auto r = semigroup_shift_2closed(d, n, prefix);
            CHECK(r.two_closed);
            CHECK(oracle::n_closed(rows, as_set(r.shifted), 2));
          }
      }
    }
  }
}

TEST_CASE("2-closed sets are closed for every n") {
  for (std::uint64_t modulus = 2; modulus <= 8; ++modulus) {
    const auto s = make_multiplicative_semigroup(modulus);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s.order()); ++mask) {
      const auto profile = closedness_profile(GSubset::from_mask(s, mask), 8);
      if (!profile[2]) continue;
      for (std::size_t n = 2; n <= 8; ++n) CHECK(profile[n]);
    }
  }
}
