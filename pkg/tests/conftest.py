from gcohom import linalg

linalg.set_verify(True)
