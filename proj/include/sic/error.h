#ifndef SIC_ERROR_H_
#define SIC_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sic {

// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorKind {
  kUsage,      // invalid configuration or arguments
  kIo,         // unreadable/unwritable files, malformed inputs
  kNumerical,  // pursuit or transform could not meet its contract
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Every selectable atom has been excluded before the stopping rule was met.
class PursuitExhausted : public Error {
 public:
  explicit PursuitExhausted(const std::string& what)
      : Error(ErrorKind::kNumerical, what) {}
};

class CorruptContainer : public Error {
 public:
  CorruptContainer(std::size_t offset, const std::string& reason)
      : Error(ErrorKind::kIo, "corrupt container at byte offset " +
                                  std::to_string(offset) + ": " + reason),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace sic

#endif  // SIC_ERROR_H_
