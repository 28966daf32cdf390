#pragma once

#include <stdexcept>
#include <string>

namespace chronosense {

// Error taxonomy shared by all modules. The three categories map onto the
// process exit codes (input -> 2, infeasible -> 3, numeric -> 4) and onto the
// C API status values.
class Error : public std::runtime_error {
public:
    enum class Category { Input, Infeasible, Numeric };

    Error(Category category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error(Category::Input, message) {}
};

class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& message) : Error(Category::Infeasible, message) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& message) : Error(Category::Numeric, message) {}
};

}  // namespace chronosense
