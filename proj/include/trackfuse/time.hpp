#ifndef TRACKFUSE_TIME_HPP
#define TRACKFUSE_TIME_HPP

#include <cstdint>
#include <string>

namespace trackfuse {

// Timestamps are UTC seconds since the Unix epoch, 1-second resolution.
using Timestamp = std::int64_t;

// Parses strict "YYYY-MM-DDThh:mm:ssZ". Throws FormatError on anything else.
Timestamp parse_iso8601(const std::string& s);

// Formats back to "YYYY-MM-DDThh:mm:ssZ".
std::string format_iso8601(Timestamp t);

}  // namespace trackfuse

#endif
