#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace designkit
{

/*! \brief Base class of every exception thrown by the library. */
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Malformed or schema-violating input document.
 *
 * `location()` is a JSON pointer (e.g. `/flows/3/source`) or, for syntax
 * errors, a byte offset of the form `byte 17`.
 */
class parse_error : public error
{
public:
  parse_error( std::string location, const std::string& message )
      : error( location.empty() ? message : location + ": " + message ),
        location_( std::move( location ) )
  {
  }

  const std::string& location() const noexcept { return location_; }

private:
  std::string location_;
};

} // namespace designkit
