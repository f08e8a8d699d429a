# sectorsec test suite
