#pragma once

#include <string>

#include "crep/kb.hpp"

#ifndef CREP_TEST_DATA_DIR
#error "CREP_TEST_DATA_DIR must point at tests/data"
#endif

inline std::string data_path(const std::string& name) { return std::string(CREP_TEST_DATA_DIR) + "/" + name; }

inline crep::KnowledgeBase birds_kb() { return crep::load_kb_file(data_path("kb_birds.kb")); }
inline crep::KnowledgeBase penguins_kb() { return crep::load_kb_file(data_path("kb_penguins.kb")); }
