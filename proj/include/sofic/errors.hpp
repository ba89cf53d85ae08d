#ifndef SOFIC_ERRORS_HPP
#define SOFIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sofic {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The presentation defines the empty shift (pruning removed all states).
class EmptyShiftError : public Error {
public:
    EmptyShiftError() : Error("shift is empty") {}
};

class NotAllowableError : public Error {
public:
    explicit NotAllowableError(const std::string& word)
        : Error("word is not allowable: \"" + word + "\"") {}
};

/// Synchronization queries are only defined for transitive shifts.
class NotTransitiveError : public Error {
public:
    NotTransitiveError() : Error("shift is not transitive") {}
};

class TooShortError : public Error {
public:
    TooShortError(std::size_t len, std::size_t need)
        : Error("word of length " + std::to_string(len) +
                " is shorter than the window 2R+1 = " + std::to_string(need)) {}
};

/// A bounded search ran out of room. Never silent: the bound is reported.
class SearchExhaustedError : public Error {
public:
    explicit SearchExhaustedError(long bound, const std::string& what_search = "search")
        : Error(what_search + " exhausted at bound " + std::to_string(bound)), bound(bound) {}
    long bound;
};

class NoConnectorError : public SearchExhaustedError {
public:
    explicit NoConnectorError(long bound) : SearchExhaustedError(bound, "connector search") {}
};

class NotLeftPeriodicError : public Error {
public:
    explicit NotLeftPeriodicError(int k)
        : Error("point is not left-" + std::to_string(k) + "-periodic") {}
};

class NotProperError : public Error {
public:
    explicit NotProperError(const std::string& why) : Error("cylinder is not proper: " + why) {}
};

class NeedWitnessError : public Error {
public:
    NeedWitnessError()
        : Error("base orbit is not synchronizing; a witness automorphism is required") {}
};

class NotCertifiedError : public Error {
public:
    explicit NotCertifiedError(int order_bound)
        : Error("invertibility not certified up to order bound " + std::to_string(order_bound) +
                " (this is not a proof of non-invertibility)"),
          order_bound(order_bound) {}
    int order_bound;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace sofic

#endif
