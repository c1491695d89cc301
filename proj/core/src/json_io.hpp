#pragma once

// Shared helpers for the JSON file formats. Not installed.

#include <designkit/error.hpp>
#include <designkit/rational.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace designkit::detail
{

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/*! \brief Parses text, rejecting empty input and duplicate object keys. */
json parse_document( std::string_view text );

std::string child_path( const std::string& path, std::string_view key );
std::string child_path( const std::string& path, std::size_t index );

const json& require( const json& object, std::string_view key, const std::string& path );
const json& require_object( const json& value, const std::string& path );
const json& require_array( const json& value, const std::string& path );
std::string require_string( const json& value, const std::string& path );
std::string require_nonempty_string( const json& value, const std::string& path );
bool require_bool( const json& value, const std::string& path );
std::int64_t require_integer( const json& value, const std::string& path );
double require_number( const json& value, const std::string& path );

/*! \brief Number (decimal literal, read exactly) or `"n/d"` string. */
rational require_rational( const json& value, const std::string& path );

/*! \brief Rejects keys of `object` outside `allowed`. */
void reject_unknown_keys( const json& object, std::initializer_list<std::string_view> allowed,
                          const std::string& path );

/*! \brief Shortest round-trip decimal form of a double. */
std::string format_double( double value );

std::string dump( const ordered_json& document );

} // namespace designkit::detail
