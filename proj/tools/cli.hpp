#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace designkit::cli
{

/*! \brief Exit codes: 0 success, 1 negative answer (UNSAT, empty, no
 *  applicable method), 2 input error. `args` excludes the program name. */
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace designkit::cli
