#pragma once

/*!
  \file funcstruct.hpp
  \brief Design problems as black boxes or function-structure DAGs.

  A function structure decomposes an overall function into function
  vertices joined by labeled material, energy or signal flows. Boundary
  terminals stand for the environment: input terminals only emit flows and
  output terminals only absorb them. Terminals are not vertices; flows to
  and from them do count toward the degree of the vertex they touch.

  The interdependency index PI is the fraction of function vertices whose
  total degree (in + out) is strictly greater than two. A black box is a
  single vertex, so its PI is 1 when it has more than two boundary flows
  and 0 otherwise.
*/

#include <designkit/error.hpp>
#include <designkit/rational.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace designkit::funcstruct
{

struct function_vertex
{
  std::string id;
  std::string label;

  bool operator==( const function_vertex& ) const = default;
};

enum class terminal_kind
{
  input,
  output
};

struct boundary_terminal
{
  std::string id;
  terminal_kind kind = terminal_kind::input;
  std::string label;

  bool operator==( const boundary_terminal& ) const = default;
};

/*! \brief Directed flow between two vertices or a vertex and a terminal.
 *
 * Parallel flows between the same pair are allowed (multiset semantics);
 * each one counts toward the degree of both endpoints.
 */
struct flow
{
  std::string source;
  std::string target;
  std::string label;

  bool operator==( const flow& ) const = default;
};

struct function_structure
{
  std::vector<function_vertex> vertices;
  std::vector<boundary_terminal> terminals;
  std::vector<flow> flows;

  bool operator==( const function_structure& ) const = default;
};

struct black_box
{
  std::string label;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  bool operator==( const black_box& ) const = default;
};

/*! \brief Nondecomposable (black box) or decomposable (function structure). */
using design_problem = std::variant<black_box, function_structure>;

inline bool is_decomposable( const design_problem& p )
{
  return std::holds_alternative<function_structure>( p );
}

enum class violation_kind
{
  empty_structure,
  empty_id,
  duplicate_id,
  empty_label,
  unknown_endpoint,
  terminal_to_terminal,
  input_terminal_has_incoming,
  output_terminal_has_outgoing,
  cycle,
  not_connected,
  black_box_without_input,
  black_box_without_output
};

std::string_view to_string( violation_kind kind );

struct violation
{
  violation_kind kind;
  std::string subject; // offending id, or empty for structure-wide issues
  std::string message;
};

struct validation_report
{
  std::vector<violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has( violation_kind kind ) const;
};

/*! \brief Lists every violated invariant; never throws. */
validation_report validate( const function_structure& fs );
validation_report validate( const black_box& bb );
validation_report validate( const design_problem& p );

/*! \brief Structure failed validation where a valid one is required. */
class invalid_structure : public error
{
public:
  explicit invalid_structure( validation_report report );
  const validation_report& report() const noexcept { return report_; }

private:
  validation_report report_;
};

/*! \brief Number of flows incident to vertex `id`, boundary flows included.
 *
 * Throws `designkit::error` if `id` is not a function vertex of `fs`.
 */
std::size_t degree( const function_structure& fs, std::string_view id );

/*! \brief Degree of every vertex, in vertex order. */
std::vector<std::size_t> degrees( const function_structure& fs );

/*! \brief Numerator and denominator of PI before normalization. */
struct interdependency_counts
{
  std::size_t high_degree = 0; // vertices with degree > 2
  std::size_t vertices = 0;
};

interdependency_counts interdependency_terms( const design_problem& p );

/*! \brief PI as an exact rational in [0, 1]. Throws `invalid_structure`. */
rational interdependency_index( const design_problem& p );

/*! \brief Reads the `.fs.json` format. Throws `designkit::parse_error`. */
design_problem parse_structure( std::string_view text );

/*! \brief Writes the `.fs.json` format (pretty printed, trailing newline). */
std::string serialize_structure( const design_problem& p );

} // namespace designkit::funcstruct
