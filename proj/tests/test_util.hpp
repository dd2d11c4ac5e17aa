#ifndef TOPICNET_TESTS_TEST_UTIL_HPP
#define TOPICNET_TESTS_TEST_UTIL_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>

namespace topicnet::tests {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("topicnet_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        auto file = path_ / name;
        std::ofstream out(file, std::ios::binary);
        out << content;
        return file;
    }

private:
    std::filesystem::path path_;
};

}  // namespace topicnet::tests

#endif  // TOPICNET_TESTS_TEST_UTIL_HPP
