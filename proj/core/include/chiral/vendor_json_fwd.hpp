#ifndef CHIRAL_VENDOR_JSON_FWD_HPP
#define CHIRAL_VENDOR_JSON_FWD_HPP

#include <json.hpp>

#endif
