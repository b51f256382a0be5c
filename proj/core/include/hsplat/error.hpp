// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hsplat {

/// Base error type. `code()` is a stable, machine-parsable identifier; the
/// CLI prints errors as "error: <code>: <message>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define HSPLAT_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

HSPLAT_DEFINE_ERROR(DegenerateFrame);
HSPLAT_DEFINE_ERROR(InvalidDirection);
HSPLAT_DEFINE_ERROR(InvalidNormal);
HSPLAT_DEFINE_ERROR(ZeroDirection);
HSPLAT_DEFINE_ERROR(EmptyEllipse);
HSPLAT_DEFINE_ERROR(ShapeError);
HSPLAT_DEFINE_ERROR(StaleCache);
HSPLAT_DEFINE_ERROR(NoViews);
HSPLAT_DEFINE_ERROR(RefusePrune);
HSPLAT_DEFINE_ERROR(InvalidScene);
HSPLAT_DEFINE_ERROR(IoError);

#undef HSPLAT_DEFINE_ERROR

} // namespace hsplat
