#pragma once

#include <stdexcept>
#include <string>

namespace hironaka {

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configuration or move violates a structural invariant (dimension, sign,
// emptiness).
class InvalidConfiguration : public GameError {
 public:
  using GameError::GameError;
};

class TerminalState : public GameError {
 public:
  explicit TerminalState(const std::string& what = "state is terminal") : GameError(what) {}
};

class IllegalMove : public GameError {
 public:
  using GameError::GameError;
};

// Some Newton vertex is the zero vector, so no coordinate subset can hit it.
class NoHittingSet : public GameError {
 public:
  explicit NoHittingSet(const std::string& what = "no hitting set exists") : GameError(what) {}
};

// An external policy process broke the wire protocol. Never recovered from.
class ExternalPolicyFault : public GameError {
 public:
  using GameError::GameError;
};

}  // namespace hironaka
