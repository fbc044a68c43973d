# scheduling package initialization
