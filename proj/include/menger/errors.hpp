#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace menger {

enum class ErrorCode {
  TooFewVertices,
  ZeroLengthEdge,
  SelfIntersection,
  MalformedJson,
  NotOnCurve,
  NoCorner,
  InvalidArgument,
  DomainError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::ZeroLengthEdge: return "ZeroLengthEdge";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::NoCorner: return "NoCorner";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

  Error(ErrorCode code, const std::string& msg, std::size_t edge_a, std::size_t edge_b)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg + " (edges " +
                           std::to_string(edge_a) + ", " + std::to_string(edge_b) + ")"),
        code_(code),
        edge_a_(edge_a),
        edge_b_(edge_b) {}

  ErrorCode code() const { return code_; }
  std::size_t edge_a() const { return edge_a_; }
  std::size_t edge_b() const { return edge_b_; }

 private:
  ErrorCode code_;
  std::size_t edge_a_ = static_cast<std::size_t>(-1);
  std::size_t edge_b_ = static_cast<std::size_t>(-1);
};

}  // namespace menger
