#pragma once

/*!
  \file casebase.hpp
  \brief Case-based design: retrieve, reuse, revise, retain.

  A case pairs a prior design problem (a function structure) with its
  solution. Similarity of a query to a case blends three terms:

      w_f * J(function labels) + w_l * J(flow labels) + w_s * (1 - |PI_q - PI_c|)

  where J is the multiset Jaccard index (sum of minimum counts over sum of
  maximum counts; 1 when both multisets are empty). All terms are exact
  rationals, so identity scores exactly 1 and the score is symmetric.
*/

#include <designkit/error.hpp>
#include <designkit/funcstruct.hpp>
#include <designkit/rational.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace designkit::cbr
{

struct component
{
  std::string name;
  std::string realizes; // label of the case subfunction it implements

  bool operator==( const component& ) const = default;
};

struct solution
{
  std::string description;
  std::vector<component> components;

  bool operator==( const solution& ) const = default;
};

struct design_case
{
  std::string id;
  funcstruct::function_structure problem;
  cbr::solution solution;
  std::string source = "technical"; // "biological" for bio-inspired cases

  bool operator==( const design_case& ) const = default;
};

/*! \brief Immutable set of cases with unique ids. */
class case_base
{
public:
  case_base() = default;

  /*! Throws `designkit::error` on duplicate ids or invalid problems. */
  explicit case_base( std::vector<design_case> cases );

  const std::vector<design_case>& cases() const noexcept { return cases_; }
  const design_case* find( std::string_view id ) const;
  std::size_t size() const noexcept { return cases_.size(); }
  bool empty() const noexcept { return cases_.empty(); }

private:
  std::vector<design_case> cases_;
};

struct similarity_spec
{
  rational function_weight{ 1, 2 };
  rational flow_weight{ 3, 10 };
  rational structure_weight{ 1, 5 };

  /*! Throws `designkit::error` unless all weights are >= 0 and sum to 1. */
  void check() const;
};

rational multiset_jaccard( std::vector<std::string> a, std::vector<std::string> b );

/*! \brief Similarity in [0, 1]. Both structures must be valid. */
rational similarity( const similarity_spec& spec, const funcstruct::function_structure& query,
                     const funcstruct::function_structure& problem );

inline rational similarity( const similarity_spec& spec, const funcstruct::function_structure& query,
                            const design_case& c )
{
  return similarity( spec, query, c.problem );
}

struct ranked_case
{
  std::string id;
  rational score;
};

/*! \brief Scores non-increasing; equal scores ordered by ascending id. */
using retrieval_result = std::vector<ranked_case>;

/*! \brief Top `k` cases. Throws on an empty base or `k == 0`. */
retrieval_result retrieve( const case_base& base, const similarity_spec& spec,
                           const funcstruct::function_structure& query, std::size_t k );

/*! \brief Token Jaccard of two subfunction descriptions; 1 for equal text. */
rational label_similarity( std::string_view a, std::string_view b );

struct component_mapping
{
  component part;
  std::optional<std::string> query_vertex; // id of the query subfunction it serves
};

struct draft_solution
{
  std::string case_id;
  std::string description;
  std::vector<component_mapping> components;
  std::vector<std::string> gaps; // query vertex ids no case subfunction maps to
};

/*! \brief Maps case subfunctions onto query subfunctions greedily by label
 *  similarity (one to one, best pair first) and carries components along. */
draft_solution reuse( const design_case& c, const funcstruct::function_structure& query );

struct requirement
{
  enum class kind
  {
    has_component,
    lacks_component,
    min_components,
    max_components
  };

  std::string name;
  requirement::kind test = kind::has_component;
  std::string component; // for has/lacks
  std::size_t count = 0; // for min/max

  bool holds( const std::vector<component_mapping>& components ) const;
};

struct requirement_check
{
  std::string name;
  bool satisfied = false;
};

struct revised_solution
{
  draft_solution draft;
  std::vector<requirement_check> checks;
  std::vector<std::string> open_tasks; // one per violated requirement
};

/*! \brief Checks requirements against the draft; never repairs it. */
revised_solution revise( const draft_solution& draft, const std::vector<requirement>& requirements );

/*! \brief New base including `c`. Throws on a duplicate id or invalid problem. */
case_base retain( const case_base& base, design_case c );

case_base parse_case_base( std::string_view text );
std::string serialize_case_base( const case_base& base );
similarity_spec parse_similarity_spec( std::string_view text );
std::vector<requirement> parse_requirements( std::string_view text );

} // namespace designkit::cbr
