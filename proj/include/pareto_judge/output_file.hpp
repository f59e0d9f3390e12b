#ifndef PARETO_JUDGE_OUTPUT_FILE_HPP
#define PARETO_JUDGE_OUTPUT_FILE_HPP

#include <filesystem>
#include <string_view>

namespace pareto_judge {

// Writes `content` to a sibling temporary file and renames it over `path`, so
// a failed write never leaves a partial file behind. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace pareto_judge

#endif // PARETO_JUDGE_OUTPUT_FILE_HPP
