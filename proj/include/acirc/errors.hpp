#pragma once

#include <stdexcept>
#include <string>

namespace acirc {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    int line;
    ParseError(int line_, const std::string& reason)
        : Error("parse error at line " + std::to_string(line_) + ": " + reason), line(line_) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& reason) : Error("validation error: " + reason) {}
};

// A division node whose denominator is the zero rational function.
class InconsistentCircuit : public Error {
public:
    int node_id;
    explicit InconsistentCircuit(int node_id_)
        : Error("inconsistent circuit: division by the zero function at node " +
                std::to_string(node_id_)),
          node_id(node_id_) {}
};

// A denominator vanishes at one concrete evaluation point (the function itself may be fine).
class DivisionByZero : public Error {
public:
    int node_id;
    explicit DivisionByZero(int node_id_)
        : Error("division by zero at node " + std::to_string(node_id_)), node_id(node_id_) {}
};

class NotPolynomialInInputs : public Error {
public:
    int node_id;
    explicit NotPolynomialInInputs(int node_id_)
        : Error("final result at node " + std::to_string(node_id_) +
                " is not polynomial in the input variables"),
          node_id(node_id_) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error("budget exceeded: " + what) {}
};

class UnsupportedFamily : public Error {
public:
    explicit UnsupportedFamily(const std::string& what) : Error("unsupported family: " + what) {}
};

class ArityMismatch : public Error {
public:
    explicit ArityMismatch(const std::string& what) : Error("arity mismatch: " + what) {}
};

} // namespace acirc
