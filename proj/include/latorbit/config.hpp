#pragma once

// Plain key = value configuration files. `[section]` headers prefix the keys
// that follow as "section.key"; '#' starts a comment.

#include <istream>
#include <map>
#include <string>

namespace latorbit {

using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::istream& in);
ConfigMap load_config_file(const std::string& path);

}  // namespace latorbit
