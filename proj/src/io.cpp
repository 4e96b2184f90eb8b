#include "partcat/io.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace partcat {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void advance() {
    if (done()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blanks() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  void skip_whitespace() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) {
      advance();
    }
  }

  bool try_literal(const std::string& lit) {
    if (text_.compare(pos_, lit.size(), lit) != 0) return false;
    for (size_t i = 0; i < lit.size(); ++i) advance();
    return true;
  }

  void expect_literal(const std::string& lit) {
    if (!try_literal(lit)) fail("expected '" + lit + "'");
  }

  long long integer() {
    skip_blanks();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    long long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > (1LL << 60)) fail("number too large");
      advance();
    }
    return negative ? -value : value;
  }

  BigInt big_integer() {
    skip_blanks();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    BigInt value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      advance();
    }
    return negative ? -value : value;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, line_, col_); }

  void expect_end() {
    skip_whitespace();
    if (!done()) fail("trailing input");
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// part: '{' [vtx (',' vtx)*] '}' ; vtx: INT ['\''] ; top j' is ground k+j.
std::vector<int> parse_part(Cursor& c, int bottom, int top) {
  c.skip_blanks();
  c.expect_literal("{");
  std::vector<int> verts;
  c.skip_blanks();
  if (c.peek() == '}') {
    c.advance();
    return verts;
  }
  while (true) {
    long long v = c.integer();
    bool primed = false;
    if (c.peek() == '\'') {
      primed = true;
      c.advance();
    }
    if (primed) {
      if (v < 1 || v > top) c.fail("top vertex out of range");
      verts.push_back(static_cast<int>(bottom + v));
    } else {
      if (v < 1 || v > bottom) c.fail("bottom vertex out of range");
      verts.push_back(static_cast<int>(v));
    }
    c.skip_blanks();
    if (c.peek() == ',') {
      c.advance();
      continue;
    }
    c.expect_literal("}");
    return verts;
  }
}

std::vector<std::vector<int>> parse_parts(Cursor& c, int bottom, int top, bool allow_empty) {
  c.expect_literal("[");
  std::vector<std::vector<int>> parts;
  c.skip_blanks();
  if (c.peek() == ']') {
    c.advance();
    return parts;
  }
  while (true) {
    auto part = parse_part(c, bottom, top);
    if (part.empty() && !allow_empty) c.fail("empty part not allowed here");
    parts.push_back(std::move(part));
    c.skip_blanks();
    if (c.peek() == ',') {
      c.advance();
      continue;
    }
    c.expect_literal("]");
    return parts;
  }
}

PartitionDiagram parse_diagram_at(Cursor& c) {
  c.expect_literal("P(");
  long long bottom = c.integer();
  c.skip_blanks();
  c.expect_literal("->");
  long long top = c.integer();
  c.skip_blanks();
  c.expect_literal(")");
  c.skip_blanks();
  auto parts = parse_parts(c, static_cast<int>(bottom), static_cast<int>(top), false);
  try {
    return PartitionDiagram::of_blocks(static_cast<int>(bottom), static_cast<int>(top),
                                       std::move(parts));
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

Canonical parse_jelly_diagram_at(Cursor& c) {
  c.expect_literal("JP(");
  long long bottom = c.integer();
  c.skip_blanks();
  c.expect_literal("->");
  long long top = c.integer();
  c.skip_blanks();
  c.expect_literal(";");
  c.skip_blanks();
  c.expect_literal("n");
  c.skip_blanks();
  c.expect_literal("=");
  long long n = c.integer();
  if (n < 2) c.fail("n must be at least 2");
  c.skip_blanks();
  c.expect_literal(")");
  c.skip_blanks();
  RawJelly raw;
  raw.bottom = static_cast<int>(bottom);
  raw.top = static_cast<int>(top);
  raw.n_legs = static_cast<int>(n);
  raw.blocks = parse_parts(c, raw.bottom, raw.top, true);
  c.skip_blanks();
  while (c.peek() == 'J') {
    c.expect_literal("J(");
    std::vector<int> legs;
    while (true) {
      c.skip_blanks();
      if (c.peek() == '_') {
        c.advance();
        legs.push_back(kDangling);
      } else {
        c.expect_literal("#");
        long long b = c.integer();
        if (b < 1 || b > static_cast<long long>(raw.blocks.size())) {
          c.fail("leg block index out of range");
        }
        legs.push_back(static_cast<int>(b - 1));
      }
      c.skip_blanks();
      if (c.peek() == ',') {
        c.advance();
        continue;
      }
      c.expect_literal(")");
      break;
    }
    raw.jellies.push_back(std::move(legs));
    c.skip_blanks();
  }
  try {
    return canonicalize(raw);
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

Scalar parse_coefficient(Cursor& c, FieldSpec f) {
  BigInt num = c.big_integer();
  c.skip_blanks();
  if (c.peek() == '/') {
    c.advance();
    BigInt den = c.big_integer();
    if (den == 0) c.fail("zero denominator");
    try {
      return Scalar::of_rational(f, BigRat(num, den));
    } catch (const characteristic_error& e) {
      c.fail(e.what());
    }
  }
  return Scalar::of_integer(f, num);
}

std::string read_all(std::istream& in) {
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

PartitionDiagram parse_diagram(const std::string& text) {
  Cursor c(text);
  c.skip_whitespace();
  PartitionDiagram d = parse_diagram_at(c);
  c.expect_end();
  return d;
}

Canonical parse_jelly_diagram(const std::string& text) {
  Cursor c(text);
  c.skip_whitespace();
  Canonical out = parse_jelly_diagram_at(c);
  c.expect_end();
  return out;
}

JellyMorphism parse_jelly_morphism_text(const std::string& text) {
  Cursor c(text);
  c.skip_whitespace();
  c.expect_literal("field");
  c.skip_blanks();
  FieldSpec f;
  if (c.peek() == 'Q') {
    c.advance();
    f = FieldSpec::rationals();
  } else if (c.peek() == 'F') {
    c.advance();
    long long p = c.integer();
    try {
      f = FieldSpec::prime_field(static_cast<std::uint32_t>(p));
    } catch (const characteristic_error& e) {
      c.fail(e.what());
    }
  } else {
    c.fail("expected Q or F<p>");
  }
  c.skip_whitespace();
  c.expect_literal("n");
  long long n = c.integer();
  if (n < 2) c.fail("n must be at least 2");
  c.skip_whitespace();
  c.expect_literal("type");
  long long bottom = c.integer();
  c.skip_blanks();
  c.expect_literal("->");
  long long top = c.integer();
  if (bottom < 0 || top < 0) c.fail("negative type");
  JellyMorphism m = JellyMorphism::zero(static_cast<int>(bottom), static_cast<int>(top), f,
                                        static_cast<int>(n));
  c.skip_whitespace();
  if (c.try_literal("0-morphism")) {
    c.expect_end();
    return m;
  }
  bool any = false;
  while (true) {
    c.skip_whitespace();
    if (c.done()) break;
    Scalar coeff = parse_coefficient(c, f);
    c.skip_blanks();
    c.expect_literal("*");
    c.skip_blanks();
    Canonical canon;
    if (c.peek() == 'J') {
      canon = parse_jelly_diagram_at(c);
      if (!canon.zero) {
        const JellyDiagram& d = canon.diagram;
        if (d.n_legs != m.n_param) c.fail("term n differs from the file's n");
        if (d.bottom != m.bottom || d.top != m.top) c.fail("term type differs from the file's type");
      }
    } else {
      PartitionDiagram d = parse_diagram_at(c);
      if (d.bottom != m.bottom || d.top != m.top) c.fail("term type differs from the file's type");
      canon.zero = false;
      canon.sign = 1;
      canon.diagram = embed_diagram(d, m.n_param);
    }
    any = true;
    if (!canon.zero) {
      Scalar signed_coeff = coeff * Scalar::of_integer(f, canon.sign);
      auto it = m.terms.find(canon.diagram);
      if (it == m.terms.end()) {
        if (!signed_coeff.is_zero()) m.terms.emplace(canon.diagram, signed_coeff);
      } else {
        it->second += signed_coeff;
        if (it->second.is_zero()) m.terms.erase(it);
      }
    }
  }
  if (!any) c.fail("expected terms or 0-morphism");
  return m;
}

JellyMorphism parse_jelly_morphism(std::istream& in) {
  return parse_jelly_morphism_text(read_all(in));
}

Morphism parse_morphism_text(const std::string& text) {
  return strip_jellies(parse_jelly_morphism_text(text));
}

Morphism parse_morphism(std::istream& in) { return parse_morphism_text(read_all(in)); }

std::string print_jelly_morphism(const JellyMorphism& m) {
  std::ostringstream out;
  out << "field " << m.field.to_string() << "\n";
  out << "n " << m.n_param << "\n";
  out << "type " << m.bottom << " -> " << m.top << "\n";
  if (m.terms.empty()) {
    out << "0-morphism\n";
    return out.str();
  }
  for (const auto& [d, c] : m.terms) {
    out << c.to_string() << " * ";
    if (d.pure()) {
      out << strip_jellies(d).to_string();
    } else {
      out << d.to_string();
    }
    out << "\n";
  }
  return out.str();
}

std::string print_morphism(const Morphism& m) { return print_jelly_morphism(embed(m)); }

std::string print_matrix_json(const TensorMap& m) {
  nlohmann::ordered_json j;
  j["n"] = m.n;
  j["k"] = m.k;
  j["l"] = m.l;
  j["field"] = m.field.to_string();
  j["rows"] = m.row_count();
  j["cols"] = m.col_count();
  std::vector<std::tuple<long long, long long, std::string>> entries;
  for (long long c = 0; c < m.col_count(); ++c) {
    for (const auto& [r, v] : m.cols[static_cast<size_t>(c)]) {
      entries.emplace_back(r + 1, c + 1, v.to_string());
    }
  }
  std::sort(entries.begin(), entries.end());
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& [r, c, v] : entries) {
    list.push_back(nlohmann::ordered_json::array({r, c, v}));
  }
  j["entries"] = std::move(list);
  return j.dump();
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return v % bound;
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

SetPartition random_set_partition(Rng& rng, int m) {
  std::vector<int> label_of(static_cast<size_t>(m) + 1, 0);
  int next_label = 1;
  for (int v = 1; v <= m; ++v) {
    int pick = rng.uniform_int(1, next_label);
    label_of[static_cast<size_t>(v)] = pick;
    if (pick == next_label) ++next_label;
  }
  return SetPartition::from_labels(m, label_of);
}

PartitionDiagram random_diagram(Rng& rng, int k, int l) {
  return PartitionDiagram::of(k, l, random_set_partition(rng, k + l));
}

Morphism random_morphism(Rng& rng, int k, int l, FieldSpec f, int n, int max_terms) {
  Morphism m = Morphism::zero(k, l, f, n);
  const int count = rng.uniform_int(1, max_terms);
  for (int t = 0; t < count; ++t) {
    Scalar c = Scalar::of_integer(f, rng.uniform_int(-4, 4));
    if (c.is_zero()) c = Scalar::one(f);
    m = add(m, scale(c, Morphism::of_diagram(random_diagram(rng, k, l), f, n)));
  }
  return m;
}

JellyMorphism random_jelly_morphism(Rng& rng, int k, int l, FieldSpec f, int n,
                                    int max_terms, int max_jellies) {
  JellyMorphism m = JellyMorphism::zero(k, l, f, n);
  const int count = rng.uniform_int(1, max_terms);
  for (int t = 0; t < count; ++t) {
    Canonical canon;
    for (int attempt = 0; attempt < 64; ++attempt) {
      RawJelly raw;
      raw.bottom = k;
      raw.top = l;
      raw.n_legs = n;
      raw.blocks = random_set_partition(rng, k + l).blocks;
      const int jellies = rng.uniform_int(0, max_jellies);
      const int junctions = jellies > 0 ? rng.uniform_int(0, 2) : 0;
      for (int x = 0; x < junctions; ++x) raw.blocks.emplace_back();
      for (int x = 0; x < jellies; ++x) {
        std::vector<int> legs;
        for (int leg = 0; leg < n; ++leg) {
          int pick = rng.uniform_int(0, static_cast<int>(raw.blocks.size()));
          legs.push_back(pick == static_cast<int>(raw.blocks.size()) ? kDangling : pick);
        }
        raw.jellies.push_back(std::move(legs));
      }
      // A junction that no leg reaches is invalid; retry in that case too.
      try {
        canon = canonicalize(raw);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (!canon.zero) break;
    }
    if (canon.zero) continue;
    Scalar c = Scalar::of_integer(f, rng.uniform_int(-4, 4));
    if (c.is_zero()) c = Scalar::one(f);
    JellyMorphism term = JellyMorphism::zero(k, l, f, n);
    term.terms.emplace(canon.diagram, c * Scalar::of_integer(f, canon.sign));
    m = add(m, term);
  }
  return m;
}

}  // namespace partcat
