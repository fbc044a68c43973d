# utils package initialization
