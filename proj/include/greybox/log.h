#pragma once

namespace greybox {

// Sets the library log level from GREYBOX_LOG_LEVEL (error, info, debug).
// Unset or unrecognised values fall back to error. Messages go to stderr.
void init_logging();

}  // namespace greybox
