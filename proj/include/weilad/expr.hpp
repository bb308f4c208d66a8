#pragma once

#include "weilad/primitive.hpp"
#include "weilad/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace weilad {

enum class NodeKind { variable, constant, add, sub, mul, div, neg, pow_int, unary };

struct ExprNode {
  NodeKind kind = NodeKind::constant;
  std::size_t variable = 0;  // variable
  Rational value;            // constant
  std::size_t lhs = 0;       // child of unary / neg / pow_int, left operand otherwise
  std::size_t rhs = 0;       // right operand of add / sub / mul / div
  Primitive primitive;       // unary
  int exponent = 0;          // pow_int
};

/// Hash-consed expression DAG. Children always have smaller ids than their
/// parents, so id order is a topological order and the graph is acyclic by
/// construction. Identical subtrees share one node.
class ExprGraph {
 public:
  std::size_t variable(std::size_t index);
  std::size_t constant(const Rational& value);
  std::size_t binary(NodeKind kind, std::size_t lhs, std::size_t rhs);
  std::size_t negate(std::size_t child);
  std::size_t pow_int(std::size_t child, int exponent);
  std::size_t unary(const Primitive& p, std::size_t child);

  const ExprNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  /// Infix rendering of the subtree at `id`.
  std::string render(std::size_t id, const std::vector<std::string>& variable_names) const;

 private:
  using Key = std::tuple<int, std::size_t, std::string, std::size_t, std::size_t, int, int>;
  std::size_t intern(ExprNode node, Key key);

  std::vector<ExprNode> nodes_;
  std::map<Key, std::size_t> index_;
};

/// A single expression: a root inside a shared graph.
struct Expr {
  std::shared_ptr<const ExprGraph> graph;
  std::size_t root = 0;
  std::vector<std::string> variables;

  const ExprNode& node() const { return graph->node(root); }
  std::string to_string() const { return graph->render(root, variables); }
};

/// Parses infix `+ - * / ^`, calls `name(arg)`, decimal and `p/q` literals.
/// Throws ParseError (with 1-based position), UnknownFunction, UnknownVariable.
Expr parse_expr(std::string_view text, const std::vector<std::string>& variables);

/// Identifiers that are not function calls, in order of first appearance.
std::vector<std::string> infer_variables(std::string_view text);

/// A smooth map R^n -> R^m given by m output expressions over one DAG.
class SmoothMap {
 public:
  SmoothMap(std::vector<std::string> variables, std::shared_ptr<const ExprGraph> graph,
            std::vector<std::size_t> outputs);

  std::size_t arity() const { return variables_.size(); }
  std::size_t output_count() const { return outputs_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const ExprGraph& graph() const { return *graph_; }
  const std::vector<std::size_t>& outputs() const { return outputs_; }
  /// Node ids reachable from the outputs, ascending (a topological order).
  const std::vector<std::size_t>& schedule() const { return schedule_; }

  /// The map restricted to one output.
  SmoothMap component(std::size_t output) const;
  std::string to_string() const;

 private:
  std::vector<std::string> variables_;
  std::shared_ptr<const ExprGraph> graph_;
  std::vector<std::size_t> outputs_;
  std::vector<std::size_t> schedule_;
};

/// All outputs are parsed into one shared graph.
SmoothMap parse_function(const std::vector<std::string>& variables, const std::vector<std::string>& outputs);

/// `vars x y ...` on the first line, one output expression per later line.
SmoothMap parse_function_text(std::string_view text);

/// Single-output map from an inline expression; variables are inferred
/// when `variables` is empty.
SmoothMap function_from_expression(std::string_view text, std::vector<std::string> variables = {});

/// Tuple of maps with identical variable lists, sharing one graph.
SmoothMap tuple_maps(const std::vector<SmoothMap>& maps);

}  // namespace weilad
