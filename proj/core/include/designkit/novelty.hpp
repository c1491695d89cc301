#pragma once

/*!
  \file novelty.hpp
  \brief Innovation and creativity of a design relative to a knowledge base.

  Design knowledge is a set of named variables, each constrained to a
  domain. A concrete design assigns values to variables. Relative to a
  knowledge base:

  - a variable of the design that the knowledge base does not know is
    *new* and contributes to creativity C;
  - a known variable whose value falls outside its domain is *unexpected*
    and contributes to innovation I.

  Both indices use the number of assignments in the design as denominator,
  so I + C <= 1. Whether a design is valuable (feasible) is supplied by the
  caller; an infeasible design is never innovative or creative.
*/

#include <designkit/error.hpp>
#include <designkit/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace designkit::novelty
{

/*! \brief JSON scalar: null, boolean, number or string. */
using value = std::variant<std::monostate, bool, double, std::string>;

std::string to_string( const value& v );

struct interval
{
  double lower = 0.0;
  double upper = 0.0;

  bool operator==( const interval& ) const = default;
};

/*! \brief Admissible values of a variable.
 *
 * A domain is the union of its parts: a finite value set, a closed numeric
 * interval and an open predicate description. At least one part is present.
 * A predicate cannot be evaluated and therefore admits every value.
 */
struct variable_domain
{
  std::vector<value> values;
  std::optional<interval> range;
  std::optional<std::string> predicate;

  static variable_domain of_set( std::vector<value> values );
  static variable_domain of_interval( double lower, double upper );
  static variable_domain of_predicate( std::string description );

  bool contains( const value& v ) const;

  bool operator==( const variable_domain& ) const = default;
};

struct design_variable
{
  std::string name;
  variable_domain domain;
  std::optional<std::string> subfunction;

  bool operator==( const design_variable& ) const = default;
};

/*! \brief Variables known a priori. Names are unique. */
class knowledge_base
{
public:
  knowledge_base() = default;

  /*! Throws `designkit::error` on a duplicate name or a malformed domain. */
  explicit knowledge_base( std::vector<design_variable> variables );

  const std::vector<design_variable>& variables() const noexcept { return variables_; }
  const design_variable* find( std::string_view name ) const;
  std::size_t size() const noexcept { return variables_.size(); }

  bool operator==( const knowledge_base& ) const = default;

private:
  std::vector<design_variable> variables_;
};

struct design_instance
{
  std::map<std::string, value, std::less<>> assignments;
  std::optional<bool> feasible;

  bool operator==( const design_instance& ) const = default;
};

enum class category
{
  routine,
  innovative,
  creative,
  not_valuable
};

std::string_view to_string( category c );

struct novelty_report
{
  rational innovation;
  rational creativity;
  novelty::category category = novelty::category::routine;
  std::vector<std::string> unexpected; // known names with out-of-domain values
  std::vector<std::string> new_variables;
};

/*! \brief Share of assignments whose known variable takes an unexpected value. */
rational innovation_index( const knowledge_base& kb, const design_instance& d );

/*! \brief Share of assignments whose variable is unknown to `kb`. */
rational creativity_index( const knowledge_base& kb, const design_instance& d );

/*! \brief Both indices plus the routine/innovative/creative/not-valuable verdict.
 *
 * Creativity takes precedence over innovation. Throws `designkit::error`
 * if the design has no assignments.
 */
novelty_report assess( const knowledge_base& kb, const design_instance& d, bool feasible );

/*! \brief Knowledge base extended so that `d` becomes routine. */
knowledge_base absorb( const knowledge_base& kb, const design_instance& d );

knowledge_base parse_knowledge_base( std::string_view text );
std::string serialize_knowledge_base( const knowledge_base& kb );
design_instance parse_design( std::string_view text );
std::string serialize_design( const design_instance& d );

} // namespace designkit::novelty
