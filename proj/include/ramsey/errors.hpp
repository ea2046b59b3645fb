#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

// Base class for all errors raised by the library.  The CLI maps these to
// exit codes: input problems -> 2, arithmetic overflow -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A clique target below 2, or a malformed key string.
class InvalidKeyError : public Error {
public:
    explicit InvalidKeyError(const std::string& msg) : Error(msg) {}
};

// Malformed facts file, certificate document, or coloring file.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Facts whose merged interval is empty.
class InconsistentFactsError : public Error {
public:
    explicit InconsistentFactsError(const std::string& msg) : Error(msg) {}
};

// Checked 64-bit arithmetic overflowed; silent wraparound would corrupt proofs.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

// Target list length does not match the coloring's color count.
class ArityError : public Error {
public:
    explicit ArityError(const std::string& msg) : Error(msg) {}
};

// criticality_check needs exact values (lower == upper) for every reduced key.
class MissingExactValueError : public Error {
public:
    explicit MissingExactValueError(const std::string& msg) : Error(msg) {}
};

// Circulant connection sets that do not partition {1..n-1} or are not
// closed under d -> n - d.
class InvalidConnectionSetsError : public Error {
public:
    explicit InvalidConnectionSetsError(const std::string& msg) : Error(msg) {}
};

// Exhaustive search ran out of budget.  Carries the last order that was
// fully decided before the budget ran out (0 if none).
class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& msg, int last_decided_order)
        : Error(msg), last_decided(last_decided_order) {}
    int last_decided;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace ramsey
