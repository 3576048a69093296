#pragma once

#include <stdexcept>
#include <string>

namespace fusalg {

/// Base class for all workbench errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input: malformed document, violated precondition, failed validation.
class input_error : public error {
public:
    explicit input_error(const std::string& what) : error(what) {}
};

/// A configured resource cap was exceeded (ideal counts, ring orders, ...).
class budget_error : public error {
public:
    explicit budget_error(const std::string& what) : error(what) {}
};

/// Internal consistency violation: a cross-check that can only fail on an
/// implementation bug (witness re-verification, implication-chain checks).
class internal_error : public error {
public:
    explicit internal_error(const std::string& what) : error(what) {}
};

} // namespace fusalg
