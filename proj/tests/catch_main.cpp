// Catch2 v3 amalgamated implementation translation unit (provides main).
#include <catch2/catch_amalgamated.cpp>
