#include "pareto_judge/output_file.hpp"

#include <fstream>
#include <system_error>

#include <unistd.h>

#include "pareto_judge/errors.hpp"

namespace pareto_judge {

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    if (path.empty() || !path.has_filename()) {
        throw IoError("invalid output path '" + path.string() + "'");
    }
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("failed writing '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

} // namespace pareto_judge
