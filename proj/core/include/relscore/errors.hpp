#pragma once

#include <stdexcept>
#include <string>

namespace relscore {

/// Malformed or inconsistent input: unreadable files, ragged rows, bad
/// prediction coverage, unseen contexts under the strict lookup policy.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A computed result violated a documented invariant of this library.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace relscore
