#pragma once

#include <optional>

#include "arraymirror/error.hpp"

// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<arraymirror::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const arraymirror::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
