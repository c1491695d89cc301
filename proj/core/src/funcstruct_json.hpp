#pragma once

#include "json_io.hpp"

#include <designkit/funcstruct.hpp>

namespace designkit::funcstruct::detail
{

design_problem problem_from_json( const designkit::detail::json& document, const std::string& path );
function_structure structure_from_json( const designkit::detail::json& document, const std::string& path );
designkit::detail::ordered_json problem_to_json( const design_problem& p );

} // namespace designkit::funcstruct::detail
