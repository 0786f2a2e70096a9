#pragma once

#include <string>

namespace netour {

struct ServeOptions {
  std::string bind;      // "host:port"; falls back to $BIND_ADDR
  std::string data_dir;  // falls back to $DATA_DIR
};

// Blocks until the server stops. Returns the process exit status.
int serve(const ServeOptions& options);

}  // namespace netour
