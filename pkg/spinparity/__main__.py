# spinparity/__main__.py
from spinparity.main import main

if __name__ == "__main__":
    main()
