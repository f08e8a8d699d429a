from sectorsec.main import run

run()
