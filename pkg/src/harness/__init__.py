# harness package initialization
