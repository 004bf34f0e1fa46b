// Error type shared by every module. The kind drives CLI exit codes.

#ifndef FPMN_ERROR_HPP_
#define FPMN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fpmn {

enum class ErrorKind {
  input,         // malformed or out-of-domain input
  limit,         // a configured bound was exhausted
  verification,  // an independent check rejected an artifact
  refused,       // the requested backend cannot answer this question
  internal       // broken invariant; indicates a bug
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string stage, const std::string& msg)
    : std::runtime_error(stage + ": " + msg), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

private:
  ErrorKind kind_;
  std::string stage_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string stage, const std::string& msg) {
  throw Error(kind, std::move(stage), msg);
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::input: return "input";
    case ErrorKind::limit: return "limit";
    case ErrorKind::verification: return "verification";
    case ErrorKind::refused: return "refused";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

} // namespace fpmn

#endif // FPMN_ERROR_HPP_
