#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stegodoc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input image, payload field overflow, malformed file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Extracted stream does not decode to a valid payload. With a valid stego
// image this almost always means the key or threshold is wrong.
class CorruptPayload : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  CapacityExceeded(std::size_t available_words, std::size_t required_words)
      : Error("capacity exceeded: " + std::to_string(required_words) +
              " words required, " + std::to_string(available_words) +
              " available"),
        available_(available_words),
        required_(required_words) {}

  std::size_t available() const noexcept { return available_; }
  std::size_t required() const noexcept { return required_; }
  std::size_t deficit() const noexcept {
    return required_ > available_ ? required_ - available_ : 0;
  }

 private:
  std::size_t available_;
  std::size_t required_;
};

}  // namespace stegodoc
