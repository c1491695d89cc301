#pragma once

/*!
  \file grammar.hpp
  \brief Attributed graph grammar engine for generative design.

  A grammar has three parts: a vocabulary of node and edge labels (each
  node label carries an attribute schema), an ordered list of LHS -> RHS
  rewrite rules, and an axiom design to which the rules are applied.

  Matching is an injective, label-preserving embedding of the LHS graph
  into the design that also satisfies the attribute predicates of each LHS
  node. It is not required to be induced: design edges that the LHS does
  not mention are ignored, unless they would be left dangling.

  Rewriting follows the double-pushout discipline:

  - LHS nodes that are anchored (mapped to an RHS node) are preserved; their
    label may change and their attributes are updated by the RHS expressions;
  - LHS nodes that are not anchored are deleted. If a deleted node has an
    incident design edge outside the match the application is rejected
    with `dangling_edge`;
  - every matched LHS edge is deleted and every RHS edge is created;
  - RHS nodes that no anchor points to are created with fresh ids.
*/

#include <designkit/error.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace designkit::grammar
{

class grammar_error : public error
{
public:
  using error::error;
};

/*! \brief Rule or design uses labels or attributes outside the vocabulary. */
class vocabulary_mismatch : public grammar_error
{
public:
  using grammar_error::grammar_error;
};

/*! \brief Match does not describe an embedding into the given design. */
class stale_match : public grammar_error
{
public:
  using grammar_error::grammar_error;
};

/*! \brief Deleting a node would leave an edge without an endpoint. */
class dangling_edge : public grammar_error
{
public:
  using grammar_error::grammar_error;
};

using attribute_value = std::variant<bool, std::int64_t, double, std::string>;

std::string to_string( const attribute_value& v );

enum class attribute_type
{
  boolean,
  integer,
  real,
  text
};

struct attribute_domain
{
  attribute_type type = attribute_type::integer;
  std::optional<double> min; // inclusive, numeric types only
  std::optional<double> max;
  std::vector<std::string> choices; // text only; empty admits any string

  bool admits( const attribute_value& v ) const;

  bool operator==( const attribute_domain& ) const = default;
};

struct node_schema
{
  std::string label;
  std::map<std::string, attribute_domain, std::less<>> attributes;

  bool operator==( const node_schema& ) const = default;
};

struct vocabulary
{
  std::vector<node_schema> nodes;
  std::vector<std::string> edge_labels;

  const node_schema* find_node( std::string_view label ) const;
  bool has_edge_label( std::string_view label ) const;

  bool operator==( const vocabulary& ) const = default;
};

using node_id = std::uint32_t;

struct node
{
  node_id id = 0;
  std::string label;
  std::map<std::string, attribute_value, std::less<>> attributes;

  bool operator==( const node& ) const = default;
};

struct edge
{
  node_id source = 0;
  node_id target = 0;
  std::string label;

  bool operator==( const edge& ) const = default;
};

/*! \brief Attributed labeled multigraph. Nodes are kept sorted by id. */
struct design
{
  std::vector<node> nodes;
  std::vector<edge> edges;

  const node* find( node_id id ) const;

  bool operator==( const design& ) const = default;
};

/*! \brief Every way `d` fails to conform to `vocab`; empty when valid. */
std::vector<std::string> check_design( const vocabulary& vocab, const design& d );

enum class compare_op
{
  eq,
  ne,
  lt,
  le,
  gt,
  ge
};

std::string_view to_string( compare_op op );

struct attribute_predicate
{
  std::string attribute;
  compare_op op = compare_op::eq;
  attribute_value operand;

  bool operator==( const attribute_predicate& ) const = default;
};

struct pattern_node
{
  std::string ref;
  std::string label;
  std::vector<attribute_predicate> predicates;

  bool operator==( const pattern_node& ) const = default;
};

/*! \brief Edge between rule-local node refs. */
struct pattern_edge
{
  std::string source;
  std::string target;
  std::string label;

  bool operator==( const pattern_edge& ) const = default;
};

/*! \brief Attribute update expression, evaluated against the matched LHS nodes. */
struct expression
{
  enum class kind
  {
    literal,
    reference, // attribute of a matched LHS node
    add,
    subtract,
    multiply,
    divide,
    min,
    max
  };

  expression::kind op = kind::literal;
  attribute_value literal;
  std::string ref;
  std::string attribute;
  std::vector<expression> operands;

  static expression constant( attribute_value v );
  static expression attribute_of( std::string ref, std::string attribute );
  static expression binary( kind op, expression lhs, expression rhs );

  bool operator==( const expression& ) const = default;
};

struct replacement_node
{
  std::string ref;
  std::string label;
  std::map<std::string, expression, std::less<>> attributes;

  bool operator==( const replacement_node& ) const = default;
};

struct rule
{
  std::string name;
  std::vector<pattern_node> lhs_nodes;
  std::vector<pattern_edge> lhs_edges;
  std::vector<replacement_node> rhs_nodes;
  std::vector<pattern_edge> rhs_edges;
  std::map<std::string, std::string, std::less<>> anchors; // lhs ref -> rhs ref

  bool operator==( const rule& ) const = default;
};

/*! \brief Throws `vocabulary_mismatch` or `grammar_error` if `r` is malformed. */
void check_rule( const vocabulary& vocab, const rule& r );

/*! \brief Embedding of a rule LHS: design node per LHS node and design edge
 *  index per LHS edge, both in LHS order. */
struct match
{
  std::vector<node_id> nodes;
  std::vector<std::size_t> edges;

  auto operator<=>( const match& ) const = default;
};

/*! \brief All embeddings of the LHS of `r` into `d`, in lexicographic order of
 *  the image node ids (then edge indices).
 *
 * Throws `vocabulary_mismatch` if `d` or `r` do not conform to `vocab`.
 */
std::vector<match> find_matches( const vocabulary& vocab, const rule& r, const design& d );

/*! \brief Rewrites `d` at `m`. Throws `stale_match`, `dangling_edge` or
 *  `vocabulary_mismatch` (the rule produced a nonconforming design). */
design apply( const vocabulary& vocab, const rule& r, const design& d, const match& m );

struct grammar
{
  designkit::grammar::vocabulary vocabulary;
  std::vector<rule> rules;
  design axiom;

  const rule* find_rule( std::string_view name ) const;

  bool operator==( const grammar& ) const = default;
};

/*! \brief Throws if the axiom or a rule violates the vocabulary or two rules share a name. */
void check_grammar( const grammar& g );

struct derivation_step
{
  std::string rule;
  match at;

  bool operator==( const derivation_step& ) const = default;
};

using derivation = std::vector<derivation_step>;

/*! \brief Applies `steps` from the axiom. Reproduces generated designs exactly. */
design replay( const grammar& g, const derivation& steps );

struct generation_limits
{
  std::size_t max_depth = 1;
  std::size_t max_designs = 1;
};

struct generated_design
{
  design result;
  designkit::grammar::derivation derivation;
  std::string canonical;
};

/*! \brief Breadth-first closure of rule application from the axiom.
 *
 * Designs are deduplicated by canonical form and returned in discovery
 * order: by depth, then parent order, then rule order, then match order.
 * The axiom is always first. Throws `grammar_error` on a zero limit.
 */
std::vector<generated_design> generate( const grammar& g, generation_limits limits );

struct add_rule
{
  designkit::grammar::rule rule;
  std::optional<std::size_t> position; // append when empty
};

struct remove_rule
{
  std::string name;
};

struct replace_axiom
{
  design axiom;
};

using grammar_edit = std::variant<add_rule, remove_rule, replace_axiom>;

/*! \brief New grammar with `edit` applied; `g` is left untouched. */
grammar modify( const grammar& g, const grammar_edit& edit );

/*! \brief String equal for two designs iff they are isomorphic, respecting
 *  node labels, attribute values and edge labels. */
std::string canonical_form( const design& d );

/*! \brief Graphviz rendering for inspection. */
std::string to_dot( const design& d, std::string_view name = "design" );

grammar parse_grammar( std::string_view text );
std::string serialize_grammar( const grammar& g );
design parse_design( std::string_view text );
std::string serialize_design( const design& d );

} // namespace designkit::grammar
