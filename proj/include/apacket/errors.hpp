#pragma once

#include <stdexcept>
#include <string>

namespace apacket {

// Raised when user-supplied data (a parameter, an order, an index, a DSL
// document) fails a documented precondition.  CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal consistency assertion fails.  These are bookkeeping
// facts the library believes are theorems (dimension conservation, chain shape,
// epsilon-key uniqueness); a throw here is a finding, not a usage error.
// CLI maps this to exit code 2.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Internal assertion macro.  Kept as a macro so the failing condition text
// lands in the message.
#define APK_CHECK(cond, msg)                                                      \
    do {                                                                          \
        if (!(cond))                                                              \
            throw ::apacket::InternalError(std::string(msg) + " [" #cond "]");    \
    } while (0)

#define APK_REQUIRE(cond, msg)                                                    \
    do {                                                                          \
        if (!(cond)) throw ::apacket::ValidationError(msg);                       \
    } while (0)

} // namespace apacket
