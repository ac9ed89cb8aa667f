#pragma once

#include <stdexcept>
#include <string>

namespace wm {

// Every failure raised by the library derives from Error so callers can catch
// the whole family at once; the subclasses exist for callers (notably the CLI)
// that map specific conditions to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error { using Error::Error; };
class EllipticState : public Error { using Error::Error; };
class StartOnBoundary : public Error { using Error::Error; };
class ZAxisSingular : public Error { using Error::Error; };
class DoubleSonicDegenerate : public Error { using Error::Error; };
class SingularPoint : public Error { using Error::Error; };
class NotInCs : public Error { using Error::Error; };
class OnBoundary : public Error { using Error::Error; };
class BasePointOnBoundary : public Error { using Error::Error; };
class OutOfRange : public Error { using Error::Error; };
class NoIntersection : public Error { using Error::Error; };
class WaveLeftDomain : public Error { using Error::Error; };
class EmptyRange : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

}  // namespace wm
