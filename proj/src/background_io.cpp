#include "sugra/background_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sugra {

using nlohmann::json;

// ---------------------------------------------------------------------------
// expression parser

struct Expr::Node {
  enum class Kind { number, coordinate, scalar_ref, add, sub, mul, div, neg, ipow, exp_fn };
  Kind kind;
  double value = 0;
  int index = 0;  // coordinate slot or integer exponent
  std::shared_ptr<const Node> a, b;
  std::shared_ptr<const Expr> ref;

  double eval(const Point& p) const {
    switch (kind) {
      case Kind::number: return value;
      case Kind::coordinate: return p[index];
      case Kind::scalar_ref: return ref->eval(p);
      case Kind::add: return a->eval(p) + b->eval(p);
      case Kind::sub: return a->eval(p) - b->eval(p);
      case Kind::mul: return a->eval(p) * b->eval(p);
      case Kind::div: return a->eval(p) / b->eval(p);
      case Kind::neg: return -a->eval(p);
      case Kind::ipow: return std::pow(a->eval(p), index);
      case Kind::exp_fn: return std::exp(a->eval(p));
    }
    return 0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Expr::Node n) { return std::make_shared<Expr::Node>(std::move(n)); }

class Parser {
 public:
  Parser(const std::string& src, const std::vector<std::string>& coords,
         const Expr::Env& scalars)
      : src_(src), coords_(coords), scalars_(scalars) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError("expression \"" + src_ + "\": " + what);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr e = term();
    while (true) {
      if (eat('+')) e = make({Expr::Node::Kind::add, 0, 0, e, term()});
      else if (eat('-')) e = make({Expr::Node::Kind::sub, 0, 0, e, term()});
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    while (true) {
      if (eat('*')) e = make({Expr::Node::Kind::mul, 0, 0, e, factor()});
      else if (eat('/')) e = make({Expr::Node::Kind::div, 0, 0, e, factor()});
      else return e;
    }
  }

  NodePtr factor() {
    if (eat('-')) return make({Expr::Node::Kind::neg, 0, 0, factor(), nullptr});
    if (eat('+')) return factor();
    NodePtr e = primary();
    if (eat('^')) {
      bool negexp = eat('-');
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("integer exponent expected");
      int k = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        k = 10 * k + (src_[pos_++] - '0');
      e = make({Expr::Node::Kind::ipow, 0, negexp ? -k : k, e, nullptr});
    }
    return e;
  }

  NodePtr primary() {
    char c = peek();
    if (c == '(') {
      eat('(');
      NodePtr e = expression();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character");
  }

  NodePtr number() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    Expr::Node n{Expr::Node::Kind::number};
    n.value = std::stod(src_.substr(start, pos_ - start));
    return make(std::move(n));
  }

  NodePtr identifier() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    if (name == "exp") {
      if (!eat('(')) fail("exp needs '('");
      NodePtr arg = expression();
      if (!eat(')')) fail("missing ')'");
      return make({Expr::Node::Kind::exp_fn, 0, 0, arg, nullptr});
    }
    for (size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == name)
        return make({Expr::Node::Kind::coordinate, 0, int(i), nullptr, nullptr});
    auto it = scalars_.find(name);
    if (it != scalars_.end()) {
      Expr::Node n{Expr::Node::Kind::scalar_ref};
      n.ref = it->second;
      return make(std::move(n));
    }
    fail("unknown name '" + name + "'");
  }

  const std::string& src_;
  const std::vector<std::string>& coords_;
  const Expr::Env& scalars_;
  size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(const std::string& src, const std::vector<std::string>& coords,
                 const Env& scalars) {
  Expr e;
  e.root_ = Parser(src, coords, scalars).run();
  return e;
}

double Expr::eval(const Point& p) const { return root_->eval(p); }

// ---------------------------------------------------------------------------
// background files

namespace {

int theory_dim(const std::string& theory) {
  if (theory == "m11") return 11;
  if (theory == "iia-string" || theory == "iia-einstein" || theory == "iib-string" ||
      theory == "iib-einstein" || theory == "iib-symmetric")
    return 10;
  throw SpecError("theory: unknown value '" + theory + "'");
}

std::string expr_text(const json& j, const std::string& where) {
  if (j.is_number()) return j.dump();
  if (j.is_string()) return j.get<std::string>();
  throw SpecError(where + ": expected an expression string or number");
}

ScalarFn compile_scalar(const json& j, const std::vector<std::string>& coords,
                        const Expr::Env& env, const std::string& where) {
  Expr e = Expr::parse(expr_text(j, where), coords, env);
  return [e](const Point& p) { return e.eval(p); };
}

FormField compile_form(const json& j, int dim, int degree,
                       const std::vector<std::string>& coords, const Expr::Env& env,
                       const std::string& where) {
  if (!j.is_array()) throw SpecError(where + ": expected a list of terms");
  std::vector<std::pair<IndexTuple, Expr>> terms;
  for (const json& term : j) {
    if (!term.contains("indices") || !term.contains("coeff"))
      throw SpecError(where + ": each term needs 'indices' and 'coeff'");
    IndexTuple idx = term["indices"].get<IndexTuple>();
    if (int(idx.size()) != degree)
      throw SpecError(where + ": expected " + std::to_string(degree) + " indices");
    for (size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 0 || idx[i] >= dim) throw SpecError(where + ": index out of range");
      if (i > 0 && idx[i] <= idx[i - 1])
        throw SpecError(where + ": indices must be strictly increasing");
    }
    terms.emplace_back(idx, Expr::parse(expr_text(term["coeff"], where), coords, env));
  }
  return [terms, dim, degree](const Point& p) {
    Form<double> f(dim, degree);
    for (const auto& [idx, e] : terms) f.add(idx, e.eval(p));
    f.prune();
    return f;
  };
}

MetricFn compile_metric_components(const json& rows, int dim,
                                   const std::vector<std::string>& coords,
                                   const Expr::Env& env) {
  if (!rows.is_array() || int(rows.size()) != dim)
    throw SpecError("metric.components: expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<Expr>> table;
  for (const json& row : rows) {
    if (!row.is_array() || int(row.size()) != dim)
      throw SpecError("metric.components: ragged row");
    std::vector<Expr> r;
    for (const json& cell : row)
      r.push_back(Expr::parse(expr_text(cell, "metric.components"), coords, env));
    table.push_back(std::move(r));
  }
  return [table, dim](const Point& p) {
    Mat<double> g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = table[i][j].eval(p);
    return g;
  };
}

MetricFn flat_metric(int dim) {
  return [dim](const Point&) {
    Mat<double> g(dim, dim);
    g(0, 0) = -1;
    for (int i = 1; i < dim; ++i) g(i, i) = 1;
    return g;
  };
}

FormField zero_form(int dim, int deg) {
  return [dim, deg](const Point&) { return Form<double>(dim, deg); };
}

}  // namespace

LoadedBackground parse_background(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(origin + ": " + e.what());
  }

  LoadedBackground out;
  if (!j.contains("theory") || !j["theory"].is_string())
    throw SpecError("theory: required string field");
  out.theory = j["theory"].get<std::string>();
  out.dim = theory_dim(out.theory);

  if (!j.contains("chart") || !j["chart"].contains("dim"))
    throw SpecError("chart.dim: required field");
  if (j["chart"]["dim"].get<int>() != out.dim)
    throw SpecError("chart.dim: theory '" + out.theory + "' needs dimension " +
                    std::to_string(out.dim) + ", file says " +
                    j["chart"]["dim"].dump());
  std::vector<std::string> coords;
  if (j["chart"].contains("coordinates")) {
    coords = j["chart"]["coordinates"].get<std::vector<std::string>>();
    if (int(coords.size()) != out.dim)
      throw SpecError("chart.coordinates: expected " + std::to_string(out.dim) + " names");
  } else {
    for (int i = 0; i < out.dim; ++i) coords.push_back("x" + std::to_string(i));
  }

  // scalars are parsed first so later expressions can reference them
  Expr::Env env;
  if (j.contains("scalars")) {
    for (const auto& [name, val] : j["scalars"].items())
      env[name] = std::make_shared<const Expr>(
          Expr::parse(expr_text(val, "scalars." + name), coords, env));
  }
  auto scalar_or = [&](const std::string& name, double fallback) -> ScalarFn {
    auto it = env.find(name);
    if (it == env.end()) return [fallback](const Point&) { return fallback; };
    auto e = it->second;
    return [e](const Point& p) { return e->eval(p); };
  };

  if (!j.contains("probe_points") || !j["probe_points"].is_array() ||
      j["probe_points"].empty())
    throw SpecError("probe_points: at least one point required");
  for (const json& pt : j["probe_points"]) {
    Point p = pt.get<Point>();
    if (int(p.size()) != out.dim)
      throw SpecError("probe_points: point of dimension " + std::to_string(p.size()) +
                      ", chart has " + std::to_string(out.dim));
    out.probe_points.push_back(std::move(p));
  }

  if (j.contains("tolerances")) {
    for (const auto& [name, val] : j["tolerances"].items()) {
      if (name == "default") out.tolerances.tol = val.get<double>();
      else out.tolerances.tol_override[name] = val.get<double>();
    }
  }

  if (j.contains("options")) {
    const json& o = j["options"];
    out.anomaly = o.value("anomaly", false);
    std::string sc = o.value("sign_convention", "paper");
    if (sc != "paper" && sc != "bbs")
      throw SpecError("options.sign_convention: 'paper' or 'bbs'");
    out.flip_sign = (sc == "bbs");
    if (o.contains("reduction"))
      out.fiber_length = o["reduction"].value("fiber_length", 1.0);
  }

  // metric
  std::string family;
  MetricFn metric;
  if (!j.contains("metric")) throw SpecError("metric: required field");
  const json& m = j["metric"];
  if (m.contains("family")) {
    family = m["family"].get<std::string>();
    if (family == "minkowski") {
      metric = flat_metric(out.dim);
    } else if (family == "freund-rubin") {
      if (out.theory != "m11")
        throw SpecError("metric.family: freund-rubin needs theory m11");
      if (j.contains("forms"))
        throw SpecError("metric.family: freund-rubin fixes the 4-form; drop 'forms'");
    } else if (family == "product") {
      if (!m.contains("blocks")) throw SpecError("metric.blocks: required for product");
      std::vector<std::pair<int, int>> blocks;  // (dim, sign of the leading entry)
      int total = 0;
      for (const json& b : m["blocks"]) {
        int bd = b.at("dim").get<int>();
        std::string sig = b.value("signature", "euclidean");
        if (sig != "euclidean" && sig != "lorentzian")
          throw SpecError("metric.blocks.signature: 'euclidean' or 'lorentzian'");
        blocks.emplace_back(bd, sig == "lorentzian" ? -1 : 1);
        total += bd;
      }
      if (total != out.dim) throw SpecError("metric.blocks: dimensions sum to " +
                                            std::to_string(total) + ", chart has " +
                                            std::to_string(out.dim));
      int dim = out.dim;
      metric = [blocks, dim](const Point&) {
        Mat<double> g(dim, dim);
        int at = 0;
        for (auto [bd, lead] : blocks) {
          g(at, at) = lead;
          for (int i = 1; i < bd; ++i) g(at + i, at + i) = 1;
          at += bd;
        }
        return g;
      };
    } else {
      throw SpecError("metric.family: unknown family '" + family + "'");
    }
  } else if (m.contains("components")) {
    metric = compile_metric_components(m["components"], out.dim, coords, env);
    Mat<double> g = metric(out.probe_points.front());
    for (int i = 0; i < out.dim; ++i)
      for (int k = i + 1; k < out.dim; ++k)
        if (g(i, k) != g(k, i))
          throw SpecError("metric.components: not symmetric at the first probe point");
  } else {
    throw SpecError("metric: needs 'family' or 'components'");
  }

  auto form_or_none = [&](const std::string& name, int deg) -> FormField {
    if (!j.contains("forms") || !j["forms"].contains(name)) return {};
    return compile_form(j["forms"][name], out.dim, deg, coords, env, "forms." + name);
  };
  auto form_or_zero = [&](const std::string& name, int deg) -> FormField {
    FormField f = form_or_none(name, deg);
    return f ? f : zero_form(out.dim, deg);
  };
  auto check_known_forms = [&](const std::vector<std::string>& known) {
    if (!j.contains("forms")) return;
    for (const auto& [name, val] : j["forms"].items())
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw SpecError("forms." + name + ": not a field of theory " + out.theory);
  };

  if (out.theory == "m11") {
    if (family == "freund-rubin") {
      out.m11 = freund_rubin_background(m.value("f", 1.0));
    } else {
      check_known_forms({"G", "C"});
      Background11 bg;
      bg.frame.patch.dim = 11;
      bg.frame.patch.metric = metric;
      bg.G = form_or_zero("G", 4);
      bg.C = form_or_none("C", 3);
      out.m11 = bg;
    }
  } else if (out.theory == "iia-string" || out.theory == "iia-einstein") {
    check_known_forms({"H3", "G2", "G4t", "B2", "C1", "C3"});
    BackgroundIIA bg;
    bg.frame.patch.dim = 10;
    bg.frame.patch.metric = metric;
    bg.phi = scalar_or("phi", 0.0);
    bg.H3 = form_or_zero("H3", 3);
    bg.G2 = form_or_zero("G2", 2);
    bg.G4t = form_or_zero("G4t", 4);
    bg.B2 = form_or_none("B2", 2);
    bg.C1 = form_or_none("C1", 1);
    bg.C3 = form_or_none("C3", 3);
    bg.frame_tag =
        out.theory == "iia-string" ? Frame::string_frame : Frame::einstein_frame;
    out.iia = bg;
  } else {
    check_known_forms({"H3", "G1", "G3t", "G5t", "B2", "C2", "C4"});
    BackgroundIIB bg;
    bg.frame.patch.dim = 10;
    bg.frame.patch.metric = metric;
    bg.phi = scalar_or("phi", 0.0);
    bg.C0 = scalar_or("C0", 0.0);
    bg.H3 = form_or_zero("H3", 3);
    bg.G1 = form_or_zero("G1", 1);
    bg.G3t = form_or_zero("G3t", 3);
    bg.G5t = form_or_zero("G5t", 5);
    bg.B2 = form_or_none("B2", 2);
    bg.C2 = form_or_none("C2", 2);
    bg.C4 = form_or_none("C4", 4);
    bg.frame_tag =
        out.theory == "iib-string" ? Frame::string_frame : Frame::einstein_frame;
    out.iib = bg;
  }
  return out;
}

LoadedBackground load_background(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_background(ss.str(), path);
}

}  // namespace sugra
