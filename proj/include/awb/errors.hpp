#pragma once

#include <stdexcept>
#include <string>

namespace awb {

// Reference to a world, agent or atom that the model does not declare.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model file or other unreadable input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was applied outside its premise (e.g. the transform of a
// model whose awareness varies across worlds).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace awb
