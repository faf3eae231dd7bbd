#include "test_util.hpp"
int main(){ return testutil::summary("acceptance-wip"); }
