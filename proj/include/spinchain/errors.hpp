#pragma once

#include <stdexcept>
#include <string>

namespace spinchain {

struct PositivityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeEigenvalue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeparationOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct AnisotropyOutOfRange : std::domain_error {
    using std::domain_error::domain_error;
};

struct FieldAboveCritical : std::domain_error {
    using std::domain_error::domain_error;
};

struct SizeLimitExceeded : std::length_error {
    using std::length_error::length_error;
};

struct XFormViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateNormalization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spinchain
