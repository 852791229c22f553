from sadiclab.main import run

run()
