#include "weilad/expr.hpp"

#include "weilad/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace weilad {

// --------------------------------------------------------------- ExprGraph

std::size_t ExprGraph::intern(ExprNode node, Key key) {
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t ExprGraph::variable(std::size_t index) {
  ExprNode n;
  n.kind = NodeKind::variable;
  n.variable = index;
  return intern(n, Key{static_cast<int>(NodeKind::variable), index, {}, 0, 0, 0, 0});
}

std::size_t ExprGraph::constant(const Rational& value) {
  ExprNode n;
  n.kind = NodeKind::constant;
  n.value = value;
  return intern(n, Key{static_cast<int>(NodeKind::constant), 0, format_rational(value), 0, 0, 0, 0});
}

std::size_t ExprGraph::binary(NodeKind kind, std::size_t lhs, std::size_t rhs) {
  if (lhs >= nodes_.size() || rhs >= nodes_.size()) throw Error(ErrorCode::internal, "dangling child id");
  ExprNode n;
  n.kind = kind;
  n.lhs = lhs;
  n.rhs = rhs;
  return intern(n, Key{static_cast<int>(kind), 0, {}, lhs, rhs, 0, 0});
}

std::size_t ExprGraph::negate(std::size_t child) {
  ExprNode n;
  n.kind = NodeKind::neg;
  n.lhs = child;
  return intern(n, Key{static_cast<int>(NodeKind::neg), 0, {}, child, 0, 0, 0});
}

std::size_t ExprGraph::pow_int(std::size_t child, int exponent) {
  ExprNode n;
  n.kind = NodeKind::pow_int;
  n.lhs = child;
  n.exponent = exponent;
  return intern(n, Key{static_cast<int>(NodeKind::pow_int), 0, {}, child, 0, 0, exponent});
}

std::size_t ExprGraph::unary(const Primitive& p, std::size_t child) {
  ExprNode n;
  n.kind = NodeKind::unary;
  n.lhs = child;
  n.primitive = p;
  return intern(n, Key{static_cast<int>(NodeKind::unary), 0, {}, child, 0, static_cast<int>(p.kind), p.exponent});
}

std::string ExprGraph::render(std::size_t id, const std::vector<std::string>& vars) const {
  const ExprNode& n = node(id);
  switch (n.kind) {
    case NodeKind::variable:
      return n.variable < vars.size() ? vars[n.variable] : "$" + std::to_string(n.variable);
    case NodeKind::constant: {
      auto s = format_rational(n.value);
      return n.value < 0 || s.find('/') != std::string::npos ? "(" + s + ")" : s;
    }
    case NodeKind::add: return "(" + render(n.lhs, vars) + " + " + render(n.rhs, vars) + ")";
    case NodeKind::sub: return "(" + render(n.lhs, vars) + " - " + render(n.rhs, vars) + ")";
    case NodeKind::mul: return render(n.lhs, vars) + "*" + render(n.rhs, vars);
    case NodeKind::div: return render(n.lhs, vars) + "/" + render(n.rhs, vars);
    case NodeKind::neg: return "(-" + render(n.lhs, vars) + ")";
    case NodeKind::pow_int: {
      const ExprNode& c = node(n.lhs);
      std::string base = render(n.lhs, vars);
      if (c.kind == NodeKind::mul || c.kind == NodeKind::div || c.kind == NodeKind::pow_int) base = "(" + base + ")";
      return base + "^" + (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent));
    }
    case NodeKind::unary: return n.primitive.name() + "(" + render(n.lhs, vars) + ")";
  }
  return "?";
}

// ------------------------------------------------------------------ parser

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars, ExprGraph& graph)
      : text_(text), vars_(vars), graph_(graph) {}

  std::size_t parse_all() {
    std::size_t root = expression();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_ + 1, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  std::size_t expression() {
    std::size_t lhs = term();
    for (;;) {
      if (accept('+')) lhs = graph_.binary(NodeKind::add, lhs, term());
      else if (accept('-')) lhs = graph_.binary(NodeKind::sub, lhs, term());
      else return lhs;
    }
  }

  std::size_t term() {
    std::size_t lhs = unary();
    for (;;) {
      if (accept('*')) lhs = graph_.binary(NodeKind::mul, lhs, unary());
      else if (accept('/')) lhs = graph_.binary(NodeKind::div, lhs, unary());
      else return lhs;
    }
  }

  std::size_t unary() {
    if (accept('-')) return graph_.negate(unary());
    if (accept('+')) return unary();
    return power();
  }

  std::size_t power() {
    std::size_t base = primary();
    while (accept('^')) base = graph_.pow_int(base, integer_exponent());
    return base;
  }

  int integer_exponent() {
    skip_ws();
    bool paren = accept('(');
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    if (start == pos_) {
      if (pos_ >= text_.size()) fail("expected an integer exponent but input ended");
      fail("expected an integer exponent");
    }
    if (pos_ - start > 6) fail("exponent too large");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (paren) expect(')');
    return negative ? -e : e;
  }

  std::size_t primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      std::size_t inner = expression();
      expect(')');
      return inner;
    }
    if (digit(c) || c == '.') return number();
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      std::size_t after = pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        Primitive p;
        if (!primitive_by_name(name, p))
          throw Error(ErrorCode::unknown_function,
                      "unknown function '" + name + "' at position " + std::to_string(start + 1));
        ++pos_;
        std::size_t arg = expression();
        expect(')');
        return graph_.unary(p, arg);
      }
      pos_ = after;
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end())
        throw Error(ErrorCode::unknown_variable,
                    "unknown variable '" + name + "' at position " + std::to_string(start + 1));
      return graph_.variable(static_cast<std::size_t>(it - vars_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::size_t number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (digit(text_[pos_]) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && digit(text_[pos_])) {
        while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
      } else {
        pos_ = save;
      }
    }
    std::string_view literal = text_.substr(start, pos_ - start);
    const bool integral = std::all_of(literal.begin(), literal.end(), digit);
    // p/q with both sides integer literals is one rational literal.
    if (integral && pos_ + 1 < text_.size() && text_[pos_] == '/' && digit(text_[pos_ + 1])) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && digit(text_[end])) ++end;
      if (end >= text_.size() || (text_[end] != '.' && !ident_char(text_[end]))) {
        literal = text_.substr(start, end - start);
        pos_ = end;
      }
    }
    try {
      return graph_.constant(parse_rational(literal));
    } catch (const ParseError&) {
      pos_ = start;
      fail("malformed number '" + std::string(literal) + "'");
    }
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  ExprGraph& graph_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>& variables) {
  auto graph = std::make_shared<ExprGraph>();
  Parser parser(text, variables, *graph);
  std::size_t root = parser.parse_all();
  return Expr{std::move(graph), root, variables};
}

std::vector<std::string> infer_variables(std::string_view text) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (digit(c) || c == '.') {
      // Skip numeric literals, including exponent suffixes like 1e-3.
      while (pos < text.size() && (ident_char(text[pos]) || text[pos] == '.')) ++pos;
      continue;
    }
    if (!ident_start(c)) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    std::string name(text.substr(start, pos - start));
    std::size_t look = pos;
    while (look < text.size() && std::isspace(static_cast<unsigned char>(text[look]))) ++look;
    if (look < text.size() && text[look] == '(') continue;
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(std::move(name));
  }
  return names;
}

// --------------------------------------------------------------- SmoothMap

SmoothMap::SmoothMap(std::vector<std::string> variables, std::shared_ptr<const ExprGraph> graph,
                     std::vector<std::size_t> outputs)
    : variables_(std::move(variables)), graph_(std::move(graph)), outputs_(std::move(outputs)) {
  std::vector<char> reach(graph_->size(), 0);
  for (auto o : outputs_) {
    if (o >= graph_->size()) throw Error(ErrorCode::bad_parameter, "output refers to a missing node");
    reach[o] = 1;
  }
  for (std::size_t id = graph_->size(); id-- > 0;) {
    if (!reach[id]) continue;
    const ExprNode& n = graph_->node(id);
    switch (n.kind) {
      case NodeKind::variable:
        if (n.variable >= variables_.size())
          throw Error(ErrorCode::unknown_variable, "variable index " + std::to_string(n.variable) + " >= arity");
        break;
      case NodeKind::constant: break;
      case NodeKind::add:
      case NodeKind::sub:
      case NodeKind::mul:
      case NodeKind::div:
        reach[n.lhs] = reach[n.rhs] = 1;
        break;
      default:
        reach[n.lhs] = 1;
    }
  }
  for (std::size_t id = 0; id < reach.size(); ++id)
    if (reach[id]) schedule_.push_back(id);
}

SmoothMap SmoothMap::component(std::size_t output) const {
  return SmoothMap(variables_, graph_, {outputs_.at(output)});
}

std::string SmoothMap::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < variables_.size(); ++i) out += (i ? ", " : "") + variables_[i];
  out += ") -> (";
  for (std::size_t i = 0; i < outputs_.size(); ++i) out += (i ? ", " : "") + graph_->render(outputs_[i], variables_);
  return out + ")";
}

SmoothMap parse_function(const std::vector<std::string>& variables, const std::vector<std::string>& outputs) {
  auto graph = std::make_shared<ExprGraph>();
  std::vector<std::size_t> roots;
  for (const auto& text : outputs) {
    Parser parser(text, variables, *graph);
    roots.push_back(parser.parse_all());
  }
  return SmoothMap(variables, std::move(graph), std::move(roots));
}

SmoothMap parse_function_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> vars;
  std::vector<std::string> outputs;
  bool have_vars = false;
  for (std::string line; std::getline(in, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    if (!have_vars) {
      std::istringstream words(line);
      std::string keyword;
      words >> keyword;
      if (keyword != "vars") throw ParseError(1, "function file must start with 'vars'");
      for (std::string v; words >> v;) vars.push_back(v);
      have_vars = true;
      continue;
    }
    outputs.push_back(line);
  }
  if (!have_vars) throw ParseError(1, "function file must start with 'vars'");
  if (outputs.empty()) throw ParseError(1, "function file has no output expressions");
  return parse_function(vars, outputs);
}

SmoothMap function_from_expression(std::string_view text, std::vector<std::string> variables) {
  if (variables.empty()) variables = infer_variables(text);
  return parse_function(variables, {std::string(text)});
}

SmoothMap tuple_maps(const std::vector<SmoothMap>& maps) {
  if (maps.empty()) throw Error(ErrorCode::bad_parameter, "cannot tuple zero maps");
  auto graph = std::make_shared<ExprGraph>();
  std::vector<std::size_t> roots;
  for (const auto& m : maps) {
    if (m.variables() != maps.front().variables())
      throw Error(ErrorCode::bad_parameter, "tupled maps must share their variables");
    std::vector<std::size_t> remap(m.graph().size());
    for (auto id : m.schedule()) {
      const ExprNode& n = m.graph().node(id);
      switch (n.kind) {
        case NodeKind::variable: remap[id] = graph->variable(n.variable); break;
        case NodeKind::constant: remap[id] = graph->constant(n.value); break;
        case NodeKind::neg: remap[id] = graph->negate(remap[n.lhs]); break;
        case NodeKind::pow_int: remap[id] = graph->pow_int(remap[n.lhs], n.exponent); break;
        case NodeKind::unary: remap[id] = graph->unary(n.primitive, remap[n.lhs]); break;
        default: remap[id] = graph->binary(n.kind, remap[n.lhs], remap[n.rhs]);
      }
    }
    for (auto o : m.outputs()) roots.push_back(remap[o]);
  }
  return SmoothMap(maps.front().variables(), std::move(graph), std::move(roots));
}

}  // namespace weilad
