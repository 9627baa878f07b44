#include "normgeom/norm.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <variant>

namespace normgeom {

namespace {

const char* const kGrammar =
    "expected one of: lp:p=<real>,dim=<int> | linf:dim=<int> | wlp:p=<real>,w=[..] | "
    "polyf:f=[[..],..] | polyv:v=[[x,y],..]";

[[noreturn]] void fail(const std::string& why) { throw SpecError("norm spec: " + why + "; " + kGrammar); }

// A value is either a number or a (possibly nested) list.
struct Value {
  std::variant<double, std::vector<Value>> data;
  bool is_number() const { return std::holds_alternative<double>(data); }
  double number() const { return std::get<double>(data); }
  const std::vector<Value>& list() const { return std::get<std::vector<Value>>(data); }
};

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "' at offset " + std::to_string(pos_));
    ++pos_;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (!done() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    if (start == pos_) fail("expected identifier at offset " + std::to_string(pos_));
    return s_.substr(start, pos_ - start);
  }

  Value value() {
    if (peek() == '[') {
      ++pos_;
      std::vector<Value> items;
      if (peek() == ']') {
        ++pos_;
        return {items};
      }
      for (;;) {
        items.push_back(value());
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect(']');
        return {items};
      }
    }
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (!done() && peek() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a real number at offset " + std::to_string(pos_));
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return {v};
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
};

double as_number(const Value& v, const std::string& key) {
  if (!v.is_number()) fail("key '" + key + "' expects a number");
  return v.number();
}

int as_int(const Value& v, const std::string& key) {
  const double d = as_number(v, key);
  if (d != static_cast<double>(static_cast<int>(d))) fail("key '" + key + "' expects an integer");
  return static_cast<int>(d);
}

std::vector<double> as_row(const Value& v, const std::string& key) {
  if (v.is_number()) fail("key '" + key + "' expects a list of numbers");
  std::vector<double> out;
  for (const auto& item : v.list()) out.push_back(as_number(item, key));
  return out;
}

std::vector<std::vector<double>> as_rows(const Value& v, const std::string& key) {
  if (v.is_number()) fail("key '" + key + "' expects a list of lists");
  std::vector<std::vector<double>> out;
  for (const auto& item : v.list()) out.push_back(as_row(item, key));
  return out;
}

std::string number_text(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string row_text(const std::vector<double>& row) {
  std::string out = "[";
  for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + number_text(row[i]);
  return out + "]";
}

}  // namespace

NormSpec parse_norm_spec(const std::string& text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  Parser in(compact);

  const std::string family = in.identifier();
  in.expect(':');
  std::map<std::string, Value> kv;
  for (;;) {
    const std::string key = in.identifier();
    in.expect('=');
    if (kv.count(key)) fail("duplicate key '" + key + "'");
    kv.emplace(key, in.value());
    if (in.done()) break;
    in.expect(',');
  }

  auto take = [&](const std::string& key) -> std::optional<Value> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    Value v = it->second;
    kv.erase(it);
    return v;
  };

  NormSpec spec;
  if (family == "lp") {
    spec.family = NormFamily::lp;
    if (auto p = take("p")) spec.p = as_number(*p, "p");
    auto dim = take("dim");
    if (!dim) fail("lp requires dim");
    spec.dim = as_int(*dim, "dim");
  } else if (family == "linf") {
    spec.family = NormFamily::linf;
    auto dim = take("dim");
    if (!dim) fail("linf requires dim");
    spec.dim = as_int(*dim, "dim");
  } else if (family == "wlp") {
    spec.family = NormFamily::weighted_lp;
    auto p = take("p");
    auto w = take("w");
    if (!p || !w) fail("wlp requires p and w");
    spec.p = as_number(*p, "p");
    spec.weights = as_row(*w, "w");
    spec.dim = static_cast<int>(spec.weights.size());
    if (auto dim = take("dim"); dim && as_int(*dim, "dim") != spec.dim) fail("wlp dim disagrees with length of w");
  } else if (family == "polyf") {
    spec.family = NormFamily::poly_functionals;
    auto f = take("f");
    if (!f) fail("polyf requires f");
    spec.functionals = as_rows(*f, "f");
    spec.dim = spec.functionals.empty() ? 0 : static_cast<int>(spec.functionals.front().size());
  } else if (family == "polyv") {
    spec.family = NormFamily::poly_vertices;
    auto v = take("v");
    if (!v) fail("polyv requires v");
    for (const auto& row : as_rows(*v, "v")) {
      if (row.size() != 2) fail("polyv vertices must be 2D points [x,y]");
      spec.vertices.push_back({row[0], row[1]});
    }
    spec.dim = 2;
  } else {
    fail("unknown family '" + family + "'");
  }
  if (!kv.empty()) fail("unexpected key '" + kv.begin()->first + "' for family " + family);
  return spec;
}

std::string format_norm_spec(const NormSpec& spec) {
  std::string out = to_string(spec.family) + ":";
  switch (spec.family) {
    case NormFamily::lp:
      if (spec.p) out += "p=" + number_text(*spec.p) + ",";
      out += "dim=" + std::to_string(spec.dim);
      break;
    case NormFamily::linf:
      out += "dim=" + std::to_string(spec.dim);
      break;
    case NormFamily::weighted_lp:
      out += "p=" + number_text(spec.p.value_or(0.0)) + ",w=" + row_text(spec.weights);
      break;
    case NormFamily::poly_functionals: {
      out += "f=[";
      for (std::size_t i = 0; i < spec.functionals.size(); ++i) out += (i ? "," : "") + row_text(spec.functionals[i]);
      out += "]";
      break;
    }
    case NormFamily::poly_vertices: {
      out += "v=[";
      for (std::size_t i = 0; i < spec.vertices.size(); ++i)
        out += (i ? "," : "") + row_text({spec.vertices[i][0], spec.vertices[i][1]});
      out += "]";
      break;
    }
  }
  return out;
}

}  // namespace normgeom
