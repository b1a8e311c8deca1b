#include "greybox/log.h"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <string_view>

namespace greybox {

void init_logging() {
    auto logger = spdlog::stderr_logger_st("greybox");
    logger->set_pattern("[%l] %v");
    const char* env = std::getenv("GREYBOX_LOG_LEVEL");
    const std::string_view level = env ? env : "error";
    if (level == "debug") {
        logger->set_level(spdlog::level::debug);
    } else if (level == "info") {
        logger->set_level(spdlog::level::info);
    } else {
        logger->set_level(spdlog::level::err);
    }
    spdlog::set_default_logger(logger);
}

}  // namespace greybox
