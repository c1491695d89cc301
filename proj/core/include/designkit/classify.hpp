#pragma once

/*!
  \file classify.hpp
  \brief Recommends synthesis methods for a design-problem profile.

  A capability matrix states, per method, whether it needs a decomposable
  problem and how well it copes with interdependencies, innovation and
  creativity. The matrix is data and can be loaded from JSON.
*/

#include <designkit/error.hpp>
#include <designkit/rational.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace designkit::classify
{

enum class novelty_level
{
  routine,
  innovative,
  creative
};

/*! \brief Ordered: none < limited < full. */
enum class capability_level
{
  none,
  limited,
  full
};

enum class method
{
  grammar_based,
  functional_synthesis,
  analogy_based
};

enum class verdict
{
  applicable,
  limited,
  inapplicable
};

std::string_view to_string( novelty_level n );
std::string_view to_string( capability_level c );
std::string_view to_string( method m );
std::string_view to_string( verdict v );

struct problem_profile
{
  bool decomposable = true;
  std::optional<rational> pi; // required if decomposable; 0 or 1 for a black box
  novelty_level novelty = novelty_level::routine;
};

/*! \brief Throws `designkit::error` if `pi` is missing for a decomposable
 *  problem, outside [0, 1], or not 0/1 for a black box. */
void check_profile( const problem_profile& p );

struct method_capabilities
{
  classify::method method = method::grammar_based;
  bool requires_decomposable = true;
  capability_level handles_interdependencies = capability_level::full;
  capability_level handles_innovation = capability_level::full;
  capability_level handles_creativity = capability_level::none;
};

using capability_matrix = std::vector<method_capabilities>;

capability_matrix default_matrix();

/*! \brief Throws unless each method appears at most once. */
void check_matrix( const capability_matrix& m );

struct method_verdict
{
  classify::method method = method::grammar_based;
  classify::verdict verdict = verdict::inapplicable;
  std::string rationale;
};

struct method_report
{
  std::vector<method_verdict> verdicts; // matrix order

  std::size_t count( verdict v ) const;
  bool any_usable() const { return count( verdict::inapplicable ) != verdicts.size(); }
};

/*! \brief Capability a method brings to a profile's novelty level; PI only
 *  appears in the rationale. */
capability_level capability_for( const method_capabilities& m, novelty_level n );

method_report recommend( const problem_profile& profile, const capability_matrix& matrix = default_matrix() );

problem_profile parse_profile( std::string_view text );
std::string serialize_profile( const problem_profile& p );
capability_matrix parse_matrix( std::string_view text );
std::string serialize_matrix( const capability_matrix& m );
std::string serialize_report( const method_report& r );

} // namespace designkit::classify
