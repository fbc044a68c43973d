# coding package initialization
