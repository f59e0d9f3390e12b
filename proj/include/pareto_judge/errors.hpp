#ifndef PARETO_JUDGE_ERRORS_HPP
#define PARETO_JUDGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pareto_judge {

class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) + " objectives, got "
                                + std::to_string(actual))
    {
    }
};

// Malformed input file content. `line` is 1-based; 0 means "whole file".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::size_t line, std::string column, const std::string& what)
        : std::runtime_error(format(file, line, column, what)), file_(std::move(file)), line_(line),
          column_(std::move(column))
    {
    }

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& column() const noexcept { return column_; }

private:
    static std::string format(const std::string& file, std::size_t line, const std::string& column,
                              const std::string& what)
    {
        std::string out = file.empty() ? std::string("<input>") : file;
        if (line > 0) {
            out += ":" + std::to_string(line);
        }
        if (!column.empty()) {
            out += ": column '" + column + "'";
        }
        return out + ": " + what;
    }

    std::string file_;
    std::size_t line_;
    std::string column_;
};

// Input sets that parse fine individually but do not fit together.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pareto_judge

#endif // PARETO_JUDGE_ERRORS_HPP
