#include "nclosed/parser.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "nclosed/error.hpp"
#include "nclosed/table_io.hpp"

namespace nclosed {

namespace {

constexpr std::uint64_t kMaxParameter = 1'000'000;

std::string describe(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return "end of input";
  const unsigned char c = static_cast<unsigned char>(text[pos]);
  if (std::isprint(c)) return std::string("'") + text[pos] + "'";
  return "byte 0x" + std::to_string(static_cast<unsigned>(c));
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::string_view rest() const { return text_.substr(pos_); }
  void advance(std::size_t n = 1) { pos_ = std::min(pos_ + n, text_.size()); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    if (rest().substr(0, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    skip_ws();
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw Error(ErrorKind::SyntaxError, expected + ", found " + describe(text_, pos_), pos_);
  }

  std::uint64_t integer(const char* what) {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > kMaxParameter)
        throw Error(ErrorKind::UnsupportedParameter, std::string(what) + " is too large", start);
      advance();
    }
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// perm := 'e' | cycle+ ; stops before ',', 'x', ')' or end of input.
CycleNotation parse_perm(Cursor& cur, std::size_t degree) {
  CycleNotation out{degree, {}};
  cur.skip_ws();
  if (cur.peek() == 'e') {
    cur.advance();
    return out;
  }
  if (cur.peek() != '(') cur.fail("expected a cycle '(' or 'e'");
  while (true) {
    cur.skip_ws();
    if (cur.peek() != '(') break;
    cur.advance();
    std::vector<unsigned> cycle;
    while (true) {
      cur.skip_ws();
      if (cur.peek() == ')') {
        cur.advance();
        break;
      }
      if (!cycle.empty() && cur.peek() == ',') {
        cur.advance();
        cur.skip_ws();
      }
      const std::size_t at = cur.pos();
      if (!std::isdigit(static_cast<unsigned char>(cur.peek())))
        cur.fail(cycle.empty() ? "expected a point or ')'" : "expected a point, ',' or ')'");
      const std::uint64_t p = cur.integer("point");
      if (p < 1 || p > degree)
        throw Error(ErrorKind::PointOutOfRange,
                    "point " + std::to_string(p) + " outside [1, " + std::to_string(degree) + "]",
                    at);
      if (std::find(cycle.begin(), cycle.end(), p) != cycle.end())
        throw Error(ErrorKind::RepeatedPointInCycle,
                    "point " + std::to_string(p) + " repeated in one cycle", at);
      cycle.push_back(static_cast<unsigned>(p));
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

void check_degree(std::size_t degree, std::size_t pos = 0) {
  if (degree < 1 || degree > kMaxPermDegree)
    throw Error(ErrorKind::UnsupportedParameter,
                "permutation degree must be in [1, " + std::to_string(kMaxPermDegree) + "]", pos);
}

class GroupParser {
 public:
  explicit GroupParser(std::string_view text) : cur_(text) {}

  FiniteGroup parse() {
    FiniteGroup g = product();
    cur_.skip_ws();
    if (!cur_.at_end()) cur_.fail("expected 'x' or end of input");
    return g;
  }

 private:
  FiniteGroup product() {
    FiniteGroup g = factor();
    while (true) {
      cur_.skip_ws();
      if (cur_.peek() != 'x') return g;
      cur_.advance();
      const std::size_t at = cur_.pos();
      FiniteGroup rhs = factor();
      try {
        g = direct_product(g, rhs);
      } catch (const Error& e) {
        throw Error(e.kind(), e.detail(), at);
      }
    }
  }

  FiniteGroup named(Family family, const char* what) {
    const std::size_t at = cur_.pos();
    const std::uint64_t n = cur_.integer(what);
    try {
      return make_named(family, n);
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail(), at);
    }
  }

  FiniteGroup factor() {
    cur_.skip_ws();
    const std::size_t start = cur_.pos();
    if (cur_.accept("perm")) return permutation_group();
    if (cur_.accept("table:")) return table(start);
    switch (cur_.peek()) {
      case 'Z': cur_.advance(); return named(Family::Cyclic, "cyclic order");
      case 'S': cur_.advance(); return named(Family::Symmetric, "symmetric degree");
      case 'D': cur_.advance(); return named(Family::Dihedral, "dihedral parameter");
      case 'Q': cur_.advance(); return named(Family::Quaternion, "quaternion order");
      case '(': {
        cur_.advance();
        FiniteGroup g = product();
        cur_.expect(")");
        return g;
      }
      default:
        cur_.fail("expected a group (Z<n>, S<n>, D<n>, Q8, perm(<n>): ..., table:<path>)");
    }
  }

  FiniteGroup permutation_group() {
    cur_.expect("(");
    cur_.skip_ws();
    const std::size_t at = cur_.pos();
    const std::size_t degree = cur_.integer("degree");
    check_degree(degree, at);
    cur_.expect(")");
    cur_.expect(":");
    const FiniteGroup sym = make_named(Family::Symmetric, degree);
    std::vector<Element> gens;
    while (true) {
      const Permutation p = to_permutation(parse_perm(cur_, degree));
      gens.push_back(sym.element(*sym.magma().find_permutation(p)));
      cur_.skip_ws();
      if (cur_.peek() != ',') break;
      cur_.advance();
    }
    const Subgroup h = generated_subgroup(gens);
    if (h.order() > kMaxOrder)
      throw Error(ErrorKind::GenerationOverflow, "generated group exceeds the size cap", at);
    return subgroup_as_group(h);
  }

  FiniteGroup table(std::size_t start) {
    std::string path(cur_.rest());
    while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
    while (!path.empty() && std::isspace(static_cast<unsigned char>(path.front())))
      path.erase(path.begin());
    if (path.empty()) cur_.fail("expected a file path after 'table:'");
    cur_.advance(cur_.rest().size());
    try {
      return load_cayley_table(path);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SyntaxError) throw;
      throw Error(e.kind(), e.detail(), start);
    }
  }

  Cursor cur_;
};

struct Item {
  std::string_view text;
  std::size_t pos;
};

std::vector<Item> split_top_level(std::string_view text) {
  std::vector<Item> items;
  int depth = 0;
  std::size_t start = 0;
  auto push = [&](std::size_t end) {
    std::size_t b = start, e = end;
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b == e) throw Error(ErrorKind::SyntaxError, "expected an element label", b);
    items.push_back({text.substr(b, e - b), b});
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') {
      if (depth == 0) throw Error(ErrorKind::SyntaxError, "unbalanced ')'", i);
      --depth;
    }
    if (text[i] == ',' && depth == 0) {
      push(i);
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(ErrorKind::SyntaxError, "expected ')', found end of input",
                              text.size());
  push(text.size());
  return items;
}

Index resolve(const Item& item, const FiniteSemigroup& owner) {
  if (auto x = owner.magma().find_label(item.text)) return *x;
  if (const auto* perms = owner.magma().permutations()) {
    try {
      const Permutation p = parse_permutation(item.text, perms->front().degree());
      if (auto x = owner.magma().find_permutation(p)) return *x;
    } catch (const Error&) {
      // fall through to UnknownLabel
    }
  }
  throw Error(ErrorKind::UnknownLabel, "'" + std::string(item.text) + "' is not an element",
              item.pos);
}

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

CycleNotation parse_cycles(std::string_view text, std::size_t degree) {
  check_degree(degree);
  Cursor cur(text);
  CycleNotation c = parse_perm(cur, degree);
  cur.skip_ws();
  if (!cur.at_end()) cur.fail("expected '(' or end of input");
  return c;
}

Permutation to_permutation(const CycleNotation& c) {
  Permutation result = Permutation::identity(c.degree);
  for (const auto& cycle : c.cycles) {
    std::vector<Permutation::Point> images(c.degree);
    for (std::size_t i = 0; i < c.degree; ++i) images[i] = static_cast<Permutation::Point>(i);
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i] - 1] = static_cast<Permutation::Point>(cycle[(i + 1) % cycle.size()] - 1);
    result = result * Permutation::from_images(std::move(images));
  }
  return result;
}

Permutation parse_permutation(std::string_view text, std::size_t degree) {
  return to_permutation(parse_cycles(text, degree));
}

FiniteGroup parse_group_spec(std::string_view text) { return GroupParser(text).parse(); }

GSubset parse_subset_spec(std::string_view text, const FiniteSemigroup& owner) {
  if (blank(text)) throw Error(ErrorKind::EmptySubsetSpec, "subset specification is empty", 0);
  GSubset out(owner);
  for (const Item& item : split_top_level(text)) out.insert(resolve(item, owner));
  return out;
}

Element parse_element(std::string_view text, const FiniteSemigroup& owner) {
  if (blank(text)) throw Error(ErrorKind::SyntaxError, "expected an element label", 0);
  const auto items = split_top_level(text);
  if (items.size() != 1)
    throw Error(ErrorKind::SyntaxError, "expected a single element, found ','",
                items[1].pos - 1);
  return owner.element(resolve(items.front(), owner));
}

}  // namespace nclosed
